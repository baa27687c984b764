#pragma once

#include <cstdint>
#include <vector>

#include "bl/model.hpp"

// Brute-force verifiers. Everything here is built from the one-step
// transition probabilities alone and shares no code with the closed-form
// spectral path, so agreement between the two is evidence, not tautology.

namespace bl {

/// Repeated matrix multiplication, O(states^3 m).
template <class S>
Matrix<S> dense_power(const Matrix<S>& kernel, long m) {
  if (kernel.rows() != kernel.cols())
    throw std::invalid_argument("dense_power: square matrix required");
  if (m < 0) throw std::invalid_argument("dense_power: m must be >= 0");
  Matrix<S> acc = Matrix<S>::identity(kernel.rows());
  for (long step = 0; step < m; ++step) acc = kernel * acc;
  return acc;
}

/// Column j of kernel^m by repeated matrix-vector products, O(states^2 m).
template <class S>
std::vector<S> dense_power_column(const Matrix<S>& kernel, int j, long m) {
  if (j < 0 || j >= kernel.cols()) throw std::out_of_range("dense_power_column: bad column");
  if (m < 0) throw std::invalid_argument("dense_power_column: m must be >= 0");
  std::vector<S> x(kernel.rows(), S{});
  x[j] = S{1};
  for (long step = 0; step < m; ++step) x = kernel * x;
  return x;
}

/// det(T - lambda I), exactly. The matrix is scaled to integers by the
/// common denominator and eliminated with fraction-free (Bareiss) division,
/// so intermediate values stay integral.
Rational charpoly_residual(const Matrix<Rational>& t, const Rational& lambda);
Rational charpoly_residual(const TridiagonalKernel& kernel, const Rational& lambda);

/// Endpoint histogram of independent walkers.
///
/// Reproducibility contract: walkers are processed in fixed chunks of 4096;
/// chunk c draws from std::mt19937_64 seeded with
/// splitmix64(seed + 0x9E3779B97F4A7C15 * (c+1)), and each step consumes one
/// uniform u = (x >> 11) * 2^-53, moving down if u < q_i, holding if
/// u < q_i + r_i, else up. The merged histogram is independent of how chunks
/// are scheduled.
struct SimulationReport {
  ModelParams params;
  int start = 0;
  long steps = 0;
  long walkers = 0;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> counts;
  std::vector<double> empirical;
  double tv_vs_exact = -1;  // filled by the caller against the exact law
};

SimulationReport simulate(const ModelParams& params, int start, long steps, long walkers,
                          std::uint64_t seed);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace bl
