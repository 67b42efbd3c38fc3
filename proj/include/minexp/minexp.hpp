#pragma once

#include "minexp/chart.hpp"
#include "minexp/exponent.hpp"
#include "minexp/newton.hpp"
#include "minexp/poly.hpp"
#include "minexp/probe.hpp"
#include "minexp/rational.hpp"
#include "minexp/resolution.hpp"
#include "minexp/simplex.hpp"
#include "minexp/valuation.hpp"
