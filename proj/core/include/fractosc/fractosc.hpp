#pragma once

#include "fractosc/comparison.hpp"
#include "fractosc/errors.hpp"
#include "fractosc/fracops.hpp"
#include "fractosc/grid.hpp"
#include "fractosc/kernel.hpp"
#include "fractosc/oscillation.hpp"
#include "fractosc/reduction.hpp"
#include "fractosc/solver.hpp"
