#pragma once

#include "wormhardy/analysis.hpp"
#include "wormhardy/checks.hpp"
#include "wormhardy/common.hpp"
#include "wormhardy/domain.hpp"
#include "wormhardy/grid.hpp"
#include "wormhardy/io.hpp"
#include "wormhardy/kernel.hpp"
#include "wormhardy/quadrature.hpp"
#include "wormhardy/strip.hpp"
#include "wormhardy/szego.hpp"
