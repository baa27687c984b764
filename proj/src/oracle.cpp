#include "bl/oracle.hpp"

#include <algorithm>
#include <future>
#include <random>
#include <thread>
#include <utility>

namespace bl {

Rational charpoly_residual(const Matrix<Rational>& t, const Rational& lambda) {
  if (t.rows() != t.cols()) throw std::invalid_argument("charpoly_residual: square matrix required");
  const int n = t.rows();
  if (n == 0) return Rational(1);

  // Common denominator of all entries of T - lambda I.
  mpz_class scale = lambda.den();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), t(i, j).den().get_mpz_t());

  Matrix<mpz_class> a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rational entry = t(i, j);
      if (i == j) entry -= lambda;
      a(i, j) = entry.num() * (scale / entry.den());
    }

  // Bareiss elimination: det(a) accumulates in a(n-1, n-1).
  int sign = 1;
  mpz_class prev(1);
  for (int col = 0; col < n - 1; ++col) {
    if (sgn(a(col, col)) == 0) {
      int pivot = -1;
      for (int row = col + 1; row < n; ++row)
        if (sgn(a(row, col)) != 0) { pivot = row; break; }
      if (pivot < 0) return Rational(0);  // zero column: singular
      for (int j = col; j < n; ++j) std::swap(a(pivot, j), a(col, j));
      sign = -sign;
    }
    for (int row = col + 1; row < n; ++row) {
      for (int j = col + 1; j < n; ++j) {
        const mpz_class val = a(row, j) * a(col, col) - a(row, col) * a(col, j);
        mpz_divexact(a(row, j).get_mpz_t(), val.get_mpz_t(), prev.get_mpz_t());
      }
      a(row, col) = 0;
    }
    prev = a(col, col);
  }

  mpz_class det_scaled = a(n - 1, n - 1);
  if (sign < 0) det_scaled = -det_scaled;
  mpz_class denom;
  mpz_pow_ui(denom.get_mpz_t(), scale.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(det_scaled, denom);
}

Rational charpoly_residual(const TridiagonalKernel& kernel, const Rational& lambda) {
  return charpoly_residual(kernel.dense(), lambda);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

namespace {

constexpr long kChunk = 4096;

std::vector<std::int64_t> run_chunk(const std::vector<double>& down_at, const std::vector<double>& hold_at,
                                    int states, int start, long steps, long walkers,
                                    std::uint64_t chunk_seed) {
  std::mt19937_64 rng(chunk_seed);
  std::vector<std::int64_t> counts(states, 0);
  for (long w = 0; w < walkers; ++w) {
    int state = start;
    for (long s = 0; s < steps; ++s) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (u < down_at[state])
        --state;
      else if (u >= hold_at[state])
        ++state;
    }
    ++counts[state];
  }
  return counts;
}

}  // namespace

SimulationReport simulate(const ModelParams& params, int start, long steps, long walkers,
                          std::uint64_t seed) {
  if (start < 0 || start > params.nw) throw std::out_of_range("simulate: start out of range");
  if (steps < 0) throw std::invalid_argument("simulate: steps must be >= 0");
  if (walkers < 1) throw std::invalid_argument("simulate: walkers must be >= 1");

  const int states = params.states();
  std::vector<double> down_at(states), hold_at(states);
  for (int i = 0; i < states; ++i) {
    const auto t = transition_probs_raw(params.n1, params.n2, params.nw, i);
    down_at[i] = t.q.to_double();
    hold_at[i] = (t.q + t.r).to_double();  // exact sum, rounded once
  }

  const long chunks = (walkers + kChunk - 1) / kChunk;
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::int64_t> counts(states, 0);

  for (long c0 = 0; c0 < chunks; c0 += workers) {
    std::vector<std::future<std::vector<std::int64_t>>> futures;
    for (long c = c0; c < std::min(chunks, c0 + workers); ++c) {
      const long in_chunk = std::min(kChunk, walkers - c * kChunk);
      const std::uint64_t chunk_seed = splitmix64(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(c + 1));
      futures.push_back(std::async(std::launch::async, run_chunk, std::cref(down_at),
                                   std::cref(hold_at), states, start, steps, in_chunk, chunk_seed));
    }
    for (auto& f : futures) {
      const auto part = f.get();
      for (int i = 0; i < states; ++i) counts[i] += part[i];
    }
  }

  SimulationReport report;
  report.params = params;
  report.start = start;
  report.steps = steps;
  report.walkers = walkers;
  report.seed = seed;
  report.counts = counts;
  report.empirical.resize(states);
  for (int i = 0; i < states; ++i)
    report.empirical[i] = static_cast<double>(counts[i]) / static_cast<double>(walkers);
  return report;
}

}  // namespace bl
