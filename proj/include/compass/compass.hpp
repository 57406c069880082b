#pragma once

// Umbrella header for the compass-state diagnostics library.

#include "compass/constants.hpp"
#include "compass/errors.hpp"
#include "compass/states.hpp"
#include "compass/fock_oracle.hpp"
#include "compass/quadrature.hpp"
#include "compass/wigner.hpp"
#include "compass/statistics.hpp"
#include "compass/squeezing.hpp"
#include "compass/sensitivity.hpp"
#include "compass/serialize.hpp"
#include "compass/sweep.hpp"
#include "compass/figures.hpp"
#include "compass/verify.hpp"
