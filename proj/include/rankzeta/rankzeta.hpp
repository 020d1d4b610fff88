#pragma once

// Umbrella header.

#include "rankzeta/errors.hpp"
#include "rankzeta/exact_arith.hpp"
#include "rankzeta/gfq.hpp"
#include "rankzeta/ffla.hpp"
#include "rankzeta/codes.hpp"
#include "rankzeta/moments.hpp"
#include "rankzeta/zeta.hpp"
#include "rankzeta/qops.hpp"
#include "rankzeta/roots.hpp"
#include "rankzeta/io.hpp"
