#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bl/linalg.hpp"
#include "bl/rational.hpp"

namespace bl {

/// Thrown by new_model when nw > min(n1, n2): the caller must go through
/// canonicalize() instead of relying on a silent relabeling.
struct NeedsCanonicalization : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown by canonicalize when no composition of the urn and color swaps
/// reaches a form with nw <= min(n1, n2), i.e. min(nw, nb) > min(n1, n2).
struct NotCanonicalizable : std::domain_error {
  using std::domain_error::domain_error;
};

/// Two-urn model: n1/n2 ball capacities, nw white balls, nb = n - nw black.
/// State i = number of white balls in urn 1. Canonical form has
/// nw <= min(n1, n2) so the chain lives on the full range i = 0..nw.
struct ModelParams {
  int n1 = 0;
  int n2 = 0;
  int nw = 0;

  int n() const { return n1 + n2; }
  int nb() const { return n1 + n2 - nw; }
  int states() const { return nw + 1; }
};

bool is_canonical(int n1, int n2, int nw);

/// Validates and builds canonical params. Throws std::invalid_argument for
/// impossible counts (zero capacity, nw < 1 or nw > n) and
/// NeedsCanonicalization when nw > min(n1, n2).
ModelParams new_model(int n1, int n2, int nw);

/// Physically admissible states of a (possibly non-canonical) model:
/// max(0, nw - n2) <= i <= min(nw, n1).
struct StateRange {
  int lo = 0;
  int hi = 0;
  int count() const { return hi - lo + 1; }
};

StateRange valid_states(int n1, int n2, int nw);

/// Affine state relabeling i -> offset + sign*i composed from the urn swap
/// (n1 <-> n2, i -> nw - i) and the color swap (nw <-> nb, i -> n1 - i).
struct IndexMap {
  bool urn_swap = false;
  bool color_swap = false;
  int offset = 0;
  int sign = 1;
  StateRange original;  // domain, in the original model's labels

  int apply(int i) const { return offset + sign * i; }
  std::string description() const;
};

struct CanonicalModel {
  ModelParams params;
  IndexMap map;
};

/// Finds the relabeling onto a canonical model (nw <= min(n1, n2), urns
/// ordered n1 <= n2). Accepts nw = 0 and nw = n, which collapse to the
/// single-state chain. Throws NotCanonicalizable when no swap composition
/// works (min(nw, nb) > min(n1, n2)).
CanonicalModel canonicalize(int n1, int n2, int nw);

struct TransitionTriple {
  Rational p, q, r;  // up, down, hold
};

/// One-step probabilities out of state i:
///   p_i = (n1-i)(nw-i)/(n1 n2), q_i = i(nb-(n1-i))/(n1 n2), r_i = 1-p-q.
TransitionTriple transition_row(const ModelParams& params, int i);

/// Same formulas without the canonical-params requirement; i must lie in
/// valid_states(n1, n2, nw). Used by the canonicalization soundness checks
/// and the simulation oracle.
TransitionTriple transition_probs_raw(int n1, int n2, int nw, int i);

/// Column-stochastic tridiagonal kernel, stored as the three probability
/// vectors indexed by source state.
struct TridiagonalKernel {
  ModelParams params;
  std::vector<Rational> p, q, r;

  /// Dense form: (T)_{ij} = Pr{i at m+1 | j at m} (columns are sources).
  Matrix<Rational> dense() const;
};

TridiagonalKernel build_kernel(const ModelParams& params);

/// Dense kernel of a possibly non-canonical model on its valid states,
/// indexed 0..count-1 after shifting by valid_states().lo.
Matrix<Rational> dense_kernel_on_valid_states(int n1, int n2, int nw);

/// Hypergeometric stationary law pi_i = C(nw,i) C(n-nw, n1-i) / C(n, n1).
std::vector<Rational> stationary_distribution(const ModelParams& params);

}  // namespace bl
