#include "qaffine/bicharacter.hpp"
#include "qaffine/oracles.hpp"

#include <gtest/gtest.h>

using namespace qaffine;

namespace {

IntVec v(std::initializer_list<long long> xs) { return IntVec(xs.begin(), xs.end()); }

QMatrix nonclosed_q() {
  ScalarGroup G(1, 1);
  QMatrix Q(G, 3);
  Q.set_pair(1, 2, GroupElement(G, {2}));
  return Q;
}

IntVec random_vec(oracle::Rng& rng, std::size_t n, long long r) {
  IntVec a(n);
  for (auto& x : a) x = oracle::uniform(rng, -r, r);
  return a;
}

}  // namespace

TEST(ValidateQ, CommutativeIsValid) { EXPECT_NO_THROW(validate_q(QMatrix(ScalarGroup(1, 1), 3))); }

TEST(ValidateQ, NonClosedExampleIsValid) {
  Bicharacter B = validate_q(nonclosed_q());
  EXPECT_EQ(B.exponents.free[0], IntMatrix::from_ll({{0, 0, 0}, {0, 0, 2}, {0, -2, 0}}));
}

TEST(ValidateQ, BrokenAntisymmetryReportsPair) {
  ScalarGroup G(1, 1);
  QMatrix Q(G, 2);
  Q.at(0, 1) = GroupElement(G, {1});
  Q.at(1, 0) = GroupElement(G, {1});
  try {
    validate_q(Q);
    FAIL() << "expected AntisymmetryError";
  } catch (const AntisymmetryError& e) {
    EXPECT_EQ(std::min(e.i(), e.j()), 1u);
    EXPECT_EQ(std::max(e.i(), e.j()), 2u);
  }
}

TEST(ValidateQ, DiagonalMustBeIdentity) {
  ScalarGroup G(0, 3);
  QMatrix Q(G, 2);
  Q.at(0, 0) = GroupElement(G, {}, 1);
  EXPECT_THROW(validate_q(Q), AntisymmetryError);
}

TEST(Sigma, Alternating) {
  oracle::Rng rng(1);
  Bicharacter B = validate_q(oracle::random_q(rng, 4, 2, 5));
  for (int t = 0; t < 50; ++t) {
    IntVec a = random_vec(rng, 4, 5);
    EXPECT_TRUE(sigma_eval(B, a, a).is_identity());
  }
}

TEST(Sigma, NonClosedFormula) {
  Bicharacter B = validate_q(nonclosed_q());
  ScalarGroup G(1, 1);
  EXPECT_EQ(sigma_eval(B, v({0, 1, 0}), v({0, 0, 1})), GroupElement(G, {2}));
  oracle::Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    IntVec s = random_vec(rng, 3, 4), u = random_vec(rng, 3, 4);
    EXPECT_EQ(sigma_eval(B, s, u), GroupElement(G, {2 * (s[1] * u[2] - s[2] * u[1])}));
  }
}

TEST(Sigma, UniparameterCommutationRules) {
  Bicharacter B = validate_q(uniparameter_q(4, 0));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      EXPECT_EQ(sigma_eval(B, oracle::unit(4, i), oracle::unit(4, j)), GroupElement(B.group(), {1}));
}

TEST(Sigma, MatchesDirectProductAndIsBilinear) {
  oracle::Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    QMatrix Q = oracle::random_q(rng, 3, 1, 3);
    Bicharacter B = validate_q(Q);
    IntVec a = random_vec(rng, 3, 4), a2 = random_vec(rng, 3, 4), b = random_vec(rng, 3, 4);
    IntVec sum(3);
    for (std::size_t i = 0; i < 3; ++i) sum[i] = a[i] + a2[i];
    EXPECT_EQ(sigma_eval(B, a, b), oracle::direct_sigma(Q, a, b));
    EXPECT_EQ(sigma_eval(B, sum, b), sigma_eval(B, a, b) * sigma_eval(B, a2, b));
    EXPECT_EQ(sigma_eval(B, b, a), sigma_eval(B, a, b).inverse());
  }
}

TEST(Radical, NonClosedExample) {
  Bicharacter B = validate_q(nonclosed_q());
  EXPECT_EQ(radical(B, Subset(3, 0)), hermite_basis({v({1, 0, 0})}, 3));
}

TEST(Radical, CommutativeDegeneration) {
  Bicharacter B = validate_q(QMatrix(ScalarGroup(2, 3), 3));
  for (const auto& w : all_subsets(3))
    EXPECT_EQ(radical(B, w), coordinate_sublattice(w.mask()));
}

TEST(Radical, BoxOracleRandom) {
  oracle::Rng rng(4);
  const Int torsions[] = {1, 3, 5};
  for (int t = 0; t < 25; ++t) {
    std::size_t n = static_cast<std::size_t>(oracle::uniform(rng, 2, 4));
    QMatrix Q = oracle::random_q(rng, n, static_cast<std::size_t>(oracle::uniform(rng, 0, 2)),
                                 torsions[oracle::uniform(rng, 0, 2)]);
    for (const auto& w : all_subsets(n)) EXPECT_TRUE(oracle::radical_box_check(Q, w, n == 4 ? 3 : 6).ok());
  }
}

TEST(Radical, BasisAnnihilatesGammaW) {
  oracle::Rng rng(5);
  QMatrix Q = oracle::random_q(rng, 4, 2, 5);
  Bicharacter B = validate_q(Q);
  for (const auto& w : all_subsets(4))
    for (const auto& a : radical(B, w).basis_rows()) {
      for (auto i : w.elements()) EXPECT_EQ(a[i], 0);
      for (auto j : w.complement_elements()) EXPECT_TRUE(sigma_eval(B, a, oracle::unit(4, j)).is_identity());
    }
}

TEST(SqrtBicharacter, CommutativeIsTrivial) {
  SqrtBicharacter c = sqrt_bicharacter(validate_q(QMatrix(ScalarGroup(1, 3), 3)));
  oracle::Rng rng(6);
  for (int t = 0; t < 20; ++t) EXPECT_TRUE(c(random_vec(rng, 3, 5), random_vec(rng, 3, 5)).is_identity());
}

TEST(SqrtBicharacter, UniparameterIsPToTheB) {
  // q free, p^2 = q: c(a, b) = p^{b(a, b)}, i.e. doubled q-exponent b(a, b)
  const std::size_t n = 4;
  SqrtBicharacter c = sqrt_bicharacter(validate_q(uniparameter_q(n, 0)));
  const IntMatrix b = standard_alternating_form(n);
  oracle::Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    IntVec a = random_vec(rng, n, 4), bb = random_vec(rng, n, 4);
    EXPECT_EQ(c(a, bb).doubled_free_exponents(), IntVec{dot(a * b, bb)});
  }
}

TEST(SqrtBicharacter, RootOfUnityChoosesQToTheHalfOfTPlusOne) {
  for (long long t : {3, 5, 7, 9}) {
    SqrtBicharacter c = sqrt_bicharacter(validate_q(uniparameter_q(2, t)));
    // c(e1, e2) = p = q^{(t+1)/2}
    EXPECT_EQ(c(oracle::unit(2, 0), oracle::unit(2, 1)).torsion_exponent(), Int((t + 1) / 2));
  }
}

TEST(SqrtBicharacter, RefusesMinusOne) {
  EXPECT_THROW(sqrt_bicharacter(validate_q(uniparameter_q(3, 2))), HypothesisError);
}

TEST(SqrtBicharacter, Properties) {
  oracle::Rng rng(8);
  const Int torsions[] = {1, 3, 5};
  for (int t = 0; t < 10; ++t) {
    QMatrix Q = oracle::random_q(rng, 3, static_cast<std::size_t>(oracle::uniform(rng, 0, 2)),
                                 torsions[oracle::uniform(rng, 0, 2)]);
    Bicharacter B = validate_q(Q);
    SqrtBicharacter c = sqrt_bicharacter(B);
    int trivial_pairs = 0;
    for (int k = 0; k < 400 && trivial_pairs < 200; ++k) {
      IntVec a = random_vec(rng, 3, 3), b = random_vec(rng, 3, 3);
      EXPECT_EQ(c(a, b).square(), sigma_eval(B, a, b));
      EXPECT_TRUE(c(a, a).is_identity());
      if (sigma_eval(B, a, b).is_identity()) {
        ++trivial_pairs;
        EXPECT_TRUE(c(a, b).is_identity());
      }
    }
    // pairs from the radical are sigma-trivial by construction
    Lattice S = radical(B, Subset(3, 0));
    for (const auto& a : S.basis_rows())
      for (int k = 0; k < 20; ++k) EXPECT_TRUE(c(a, random_vec(rng, 3, 4)).is_identity());
  }
}

TEST(AdaptedCocycle, TrivialSigma) {
  AdaptedCocycle ad = adapted_cocycle(validate_q(QMatrix(ScalarGroup(1, 1), 3)));
  EXPECT_EQ(ad.radical, full_lattice(3));
  oracle::Rng rng(9);
  for (int t = 0; t < 20; ++t) EXPECT_TRUE(ad.cocycle(random_vec(rng, 3, 4), random_vec(rng, 3, 4)).is_identity());
}

TEST(AdaptedCocycle, NonClosedExampleVanishesOnS) {
  Bicharacter B = validate_q(nonclosed_q());
  AdaptedCocycle ad = adapted_cocycle(B);
  EXPECT_EQ(ad.radical, hermite_basis({v({1, 0, 0})}, 3));
  oracle::Rng rng(10);
  for (int t = 0; t < 50; ++t) {
    IntVec a(3);
    a[0] = oracle::uniform(rng, -5, 5);
    IntVec b = random_vec(rng, 3, 5);
    EXPECT_TRUE(ad.cocycle(a, b).is_identity());
  }
}

TEST(AdaptedCocycle, RandomProperties) {
  oracle::Rng rng(11);
  const Int torsions[] = {1, 2, 3, 4, 5};
  for (int t = 0; t < 20; ++t) {
    QMatrix Q = oracle::random_q(rng, 3, static_cast<std::size_t>(oracle::uniform(rng, 0, 2)),
                                 torsions[oracle::uniform(rng, 0, 4)]);
    Bicharacter B = validate_q(Q);
    AdaptedCocycle ad = adapted_cocycle(B);
    EXPECT_EQ(ad.radical, radical(B, Subset(3, 0)));
    EXPECT_EQ(ad.gammas.rows(), 3u);
    for (std::size_t i = 0; i < ad.orders.size(); ++i) {
      IntVec g = ad.gammas.row(i);
      for (auto& x : g) x *= ad.orders[i];
      EXPECT_TRUE(lattice_contains(ad.radical, g));
    }
    for (int k = 0; k < 100; ++k) {
      IntVec a = random_vec(rng, 3, 4), b = random_vec(rng, 3, 4);
      EXPECT_EQ(ad.cocycle(a, b) * ad.cocycle(b, a).inverse(), sigma_eval(B, a, b));
    }
    for (int k = 0; k < 200; ++k) {
      IntVec s(3);
      for (const auto& r : ad.radical.basis_rows()) {
        long long m = oracle::uniform(rng, -3, 3);
        for (std::size_t i = 0; i < 3; ++i) s[i] += m * r[i];
      }
      EXPECT_TRUE(ad.cocycle(s, random_vec(rng, 3, 4)).is_identity());
    }
  }
}

TEST(Hypothesis, TorsionFreeApplies) { EXPECT_TRUE(hypothesis_report(uniparameter_q(3, 0)).theorem_applies); }

TEST(Hypothesis, MinusOneDoesNotApply) {
  HypothesisReport r = hypothesis_report(uniparameter_q(3, 2));
  EXPECT_FALSE(r.theorem_applies);
  EXPECT_NE(r.reason.find("-1"), std::string::npos);
}

TEST(Hypothesis, CharacteristicTwoApplies) {
  EXPECT_TRUE(hypothesis_report(uniparameter_q(3, 3, std::nullopt, true)).theorem_applies);
}

TEST(Hypothesis, OrderNineInCharacteristicThreeIsContradictory) {
  HypothesisReport r = hypothesis_report(uniparameter_q(3, 9), Int(3));
  EXPECT_TRUE(r.any_contradiction);
  for (const auto& s : r.strata) {
    // torsion order of Gamma_w / S_w is 9^{n - |w|} for even n - |w| and 9^{n-|w|-1} otherwise
    const std::size_t rank = 3 - s.w.size();
    const std::size_t expected_exponent = rank % 2 == 0 ? rank : rank - 1;
    Int expected = 1;
    for (std::size_t k = 0; k < expected_exponent; ++k) expected *= 9;
    EXPECT_EQ(s.shape.torsion_order(), expected) << s.w.str();
    EXPECT_EQ(s.char_contradiction, expected_exponent > 0);
  }
}

TEST(Hypothesis, TorsionOrderOfEvenRankStratum) {
  // Gamma_w / t Gamma_w has order t^{n-|w|} when n - |w| is even
  HypothesisReport r = hypothesis_report(uniparameter_q(2, 9), Int(3));
  EXPECT_EQ(r.strata[0].shape.torsion_order(), Int(81));
  EXPECT_EQ(r.strata[0].torsion_primes, std::vector<Int>{3});
}
