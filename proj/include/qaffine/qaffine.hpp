#pragma once

#include "qaffine/integer.hpp"
#include "qaffine/lattice.hpp"
#include "qaffine/scalars.hpp"
#include "qaffine/subset.hpp"
#include "qaffine/bicharacter.hpp"
#include "qaffine/feasibility.hpp"
#include "qaffine/strata.hpp"
#include "qaffine/quotient_map.hpp"
#include "qaffine/render.hpp"
#include "qaffine/graded_twist.hpp"
#include "qaffine/problem.hpp"
#include "qaffine/report.hpp"
