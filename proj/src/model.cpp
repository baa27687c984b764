#include "bl/model.hpp"

#include <algorithm>

namespace bl {

bool is_canonical(int n1, int n2, int nw) {
  return n1 >= 1 && n2 >= 1 && nw >= 0 && nw <= std::min(n1, n2);
}

ModelParams new_model(int n1, int n2, int nw) {
  if (n1 < 1 || n2 < 1) throw std::invalid_argument("new_model: urn capacities must be >= 1");
  if (nw > n1 + n2) throw std::invalid_argument("new_model: impossible color count (nw > n1+n2)");
  if (nw < 1) throw std::invalid_argument("new_model: nw must be >= 1 for a nontrivial chain");
  if (nw > std::min(n1, n2))
    throw NeedsCanonicalization("new_model: nw > min(n1,n2); call canonicalize first");
  return ModelParams{n1, n2, nw};
}

StateRange valid_states(int n1, int n2, int nw) {
  return StateRange{std::max(0, nw - n2), std::min(nw, n1)};
}

std::string IndexMap::description() const {
  std::string s;
  if (!urn_swap && !color_swap) return "identity";
  if (urn_swap) s += "urn swap";
  if (color_swap) {
    if (!s.empty()) s += " + ";
    s += "color swap";
  }
  s += " (i -> " + std::to_string(offset) + (sign > 0 ? " + i)" : " - i)");
  return s;
}

CanonicalModel canonicalize(int n1, int n2, int nw) {
  if (n1 < 1 || n2 < 1) throw std::invalid_argument("canonicalize: urn capacities must be >= 1");
  if (nw < 0 || nw > n1 + n2)
    throw std::invalid_argument("canonicalize: nw out of range 0..n1+n2");

  const int nb = n1 + n2 - nw;
  struct Candidate {
    bool urn, color;
    ModelParams params;
    int offset, sign;
  };
  // i' in the relabeled model, as a function of the original state i:
  //   urn swap:    i -> nw - i        params (n2, n1, nw)
  //   color swap:  i -> n1 - i        params (n1, n2, nb)
  //   both:        i -> i + n2 - nw   params (n2, n1, nb)
  const Candidate candidates[] = {
      {false, false, ModelParams{n1, n2, nw}, 0, +1},
      {true, false, ModelParams{n2, n1, nw}, nw, -1},
      {false, true, ModelParams{n1, n2, nb}, n1, -1},
      {true, true, ModelParams{n2, n1, nb}, n2 - nw, +1},
  };

  const Candidate* best = nullptr;
  for (const auto& c : candidates) {
    if (c.params.nw > std::min(c.params.n1, c.params.n2)) continue;
    if (!best) { best = &c; continue; }
    const bool best_ordered = best->params.n1 <= best->params.n2;
    const bool c_ordered = c.params.n1 <= c.params.n2;
    if (c_ordered && !best_ordered) best = &c;
  }
  if (!best)
    throw NotCanonicalizable(
        "canonicalize: min(nw,nb) > min(n1,n2); no urn/color relabeling reaches nw <= min(n1,n2)");

  CanonicalModel out;
  out.params = best->params;
  out.map.urn_swap = best->urn;
  out.map.color_swap = best->color;
  out.map.offset = best->offset;
  out.map.sign = best->sign;
  out.map.original = valid_states(n1, n2, nw);
  return out;
}

TransitionTriple transition_probs_raw(int n1, int n2, int nw, int i) {
  const auto range = valid_states(n1, n2, nw);
  if (i < range.lo || i > range.hi)
    throw std::out_of_range("transition probabilities: state outside the valid range");
  const long denom = static_cast<long>(n1) * n2;
  const int nb = n1 + n2 - nw;
  Rational p(static_cast<long>(n1 - i) * (nw - i), denom);
  Rational q(static_cast<long>(i) * (nb - (n1 - i)), denom);
  Rational r = Rational(1) - p - q;
  return TransitionTriple{p, q, r};
}

TransitionTriple transition_row(const ModelParams& params, int i) {
  if (!is_canonical(params.n1, params.n2, params.nw))
    throw std::invalid_argument("transition_row: params not canonical");
  if (i < 0 || i > params.nw) throw std::out_of_range("transition_row: state index out of range");
  return transition_probs_raw(params.n1, params.n2, params.nw, i);
}

TridiagonalKernel build_kernel(const ModelParams& params) {
  TridiagonalKernel k;
  k.params = params;
  const int s = params.states();
  k.p.reserve(s);
  k.q.reserve(s);
  k.r.reserve(s);
  for (int i = 0; i < s; ++i) {
    auto t = transition_row(params, i);
    k.p.push_back(std::move(t.p));
    k.q.push_back(std::move(t.q));
    k.r.push_back(std::move(t.r));
  }
  return k;
}

Matrix<Rational> TridiagonalKernel::dense() const {
  const int s = params.states();
  Matrix<Rational> t(s, s);
  for (int j = 0; j < s; ++j) {
    t(j, j) = r[j];
    if (j + 1 < s) t(j + 1, j) = p[j];
    if (j - 1 >= 0) t(j - 1, j) = q[j];
  }
  return t;
}

Matrix<Rational> dense_kernel_on_valid_states(int n1, int n2, int nw) {
  const auto range = valid_states(n1, n2, nw);
  const int s = range.count();
  Matrix<Rational> t(s, s);
  for (int j = 0; j < s; ++j) {
    const auto triple = transition_probs_raw(n1, n2, nw, range.lo + j);
    t(j, j) = triple.r;
    if (j + 1 < s) t(j + 1, j) = triple.p;
    if (j - 1 >= 0) t(j - 1, j) = triple.q;
  }
  return t;
}

std::vector<Rational> stationary_distribution(const ModelParams& params) {
  if (!is_canonical(params.n1, params.n2, params.nw))
    throw std::invalid_argument("stationary_distribution: params not canonical");
  const mpz_class total = binomial_mpz(params.n(), params.n1);
  std::vector<Rational> pi;
  pi.reserve(params.states());
  for (int i = 0; i <= params.nw; ++i) {
    mpz_class num = binomial_mpz(params.nw, i) * binomial_mpz(params.nb(), params.n1 - i);
    pi.emplace_back(num, total);
  }
  return pi;
}

}  // namespace bl
