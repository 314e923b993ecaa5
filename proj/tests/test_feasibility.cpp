#include "qaffine/feasibility.hpp"
#include "qaffine/oracles.hpp"

#include <gtest/gtest.h>

using namespace qaffine;

namespace {

QMatrix minus_one(std::size_t n) { return uniparameter_q(n, 2); }

}  // namespace

TEST(Feasibility, MinusOneTwoVariables) {
  QMatrix Q = minus_one(2);
  FeasibilityResult r = bichar_feasibility(validate_q(Q));
  ASSERT_TRUE(r.feasible);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_TRUE(oracle::verify_witness(Q, *r.witness));
}

TEST(Feasibility, MinusOneThreeVariables) {
  QMatrix Q = minus_one(3);
  FeasibilityResult r = bichar_feasibility(validate_q(Q));
  ASSERT_TRUE(r.feasible);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_TRUE(oracle::verify_witness(Q, *r.witness));
}

TEST(Feasibility, MinusOneFourVariablesIsInfeasible) {
  FeasibilityResult r = bichar_feasibility(validate_q(minus_one(4)));
  EXPECT_FALSE(r.feasible);
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_LE(r.candidates_examined, 4096u);
  EXPECT_EQ(r.candidates_examined, 4096u);
  EXPECT_NE(r.verdict.find("infeasible"), std::string::npos);
  EXPECT_NE(r.verdict.find("consistent with"), std::string::npos);
}

TEST(Feasibility, LinearMethodAgrees) {
  FeasibilityOptions opt;
  opt.method = FeasibilityMethod::linear;
  for (std::size_t n = 2; n <= 4; ++n) {
    QMatrix Q = minus_one(n);
    FeasibilityResult lin = bichar_feasibility(validate_q(Q), opt);
    FeasibilityResult exh = bichar_feasibility(validate_q(Q));
    EXPECT_EQ(lin.feasible, exh.feasible) << "n = " << n;
    if (lin.witness) EXPECT_TRUE(oracle::verify_witness(Q, *lin.witness));
  }
}

TEST(Feasibility, PureBicharactersFailFromThreeVariables) {
  FeasibilityOptions opt;
  opt.coboundary_period = 1;
  EXPECT_TRUE(bichar_feasibility(validate_q(minus_one(2)), opt).feasible);
  EXPECT_FALSE(bichar_feasibility(validate_q(minus_one(3)), opt).feasible);
}

TEST(Feasibility, LargerValueGroup) {
  FeasibilityOptions opt;
  opt.k = 3;
  opt.method = FeasibilityMethod::linear;
  FeasibilityResult r = bichar_feasibility(validate_q(minus_one(3)), opt);
  ASSERT_TRUE(r.feasible);
  EXPECT_TRUE(oracle::verify_witness(minus_one(3), *r.witness));
  EXPECT_THROW(bichar_feasibility(validate_q(minus_one(4)), opt), InputError);
}

TEST(Feasibility, RejectsOtherGroups) {
  EXPECT_THROW(bichar_feasibility(validate_q(uniparameter_q(3, 3))), InputError);
  EXPECT_THROW(bichar_feasibility(validate_q(uniparameter_q(3, 0))), InputError);
}

TEST(Feasibility, Deterministic) {
  FeasibilityResult a = bichar_feasibility(validate_q(minus_one(3)));
  FeasibilityResult b = bichar_feasibility(validate_q(minus_one(3)));
  ASSERT_TRUE(a.witness && b.witness);
  EXPECT_EQ(a.witness->C, b.witness->C);
  EXPECT_EQ(a.witness->f, b.witness->f);
}
