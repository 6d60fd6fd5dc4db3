#pragma once

// Random problem instances for the verification suites.

#include <utility>

#include "ghmc/gaussian.hpp"
#include "ghmc/rng.hpp"
#include "ghmc/spd.hpp"

namespace ghmc::experiments {

using Engine = RngStream::Engine;

double uniform(Engine& engine, double lo, double hi);
double log_uniform(Engine& engine, double lo, double hi);
Vector normal_vector(Engine& engine, long d, double scale = 1.0);

/// Haar-distributed orthogonal matrix (QR of a Gaussian matrix, signs fixed).
Matrix random_orthonormal(Engine& engine, long d);

/// Spectrum log-uniform in [lo, hi], Haar eigenbasis.
SpdMatrix random_spd(Engine& engine, long d, double lo, double hi);

/// Two SPD matrices sharing one random eigenbasis.
std::pair<SpdMatrix, SpdMatrix> random_commuting_pair(Engine& engine, long d, double lo, double hi);

GaussianParams random_gaussian(Engine& engine, const SpdMatrix& cov, double mean_scale);

}  // namespace ghmc::experiments
