#pragma once

// Closed-form Wiener-Hopf factorization of the Normal Inverse Gaussian
// process: spectral measures, exact moment sequences, gamma-convolution and
// exponential-mixture approximations of the extrema laws, and the ruin /
// perpetual-option applications built on them.

#include "nigwh/applications.hpp"
#include "nigwh/distributions.hpp"
#include "nigwh/errors.hpp"
#include "nigwh/measure.hpp"
#include "nigwh/moments.hpp"
#include "nigwh/nig.hpp"
#include "nigwh/pade.hpp"
#include "nigwh/quadrature.hpp"
#include "nigwh/real.hpp"
#include "nigwh/validation.hpp"
