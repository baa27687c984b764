#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bl/model.hpp"
#include "bl/verify.hpp"
#include "test_util.hpp"

using namespace bl;
using bl::testutil::R;

TEST_CASE("new_model derives counts and rejects impossible parameters") {
  const auto p = new_model(2, 2, 2);
  CHECK(p.n() == 4);
  CHECK(p.nb() == 2);
  CHECK(p.states() == 3);

  const auto q = new_model(3, 4, 2);
  CHECK(q.n() == 7);
  CHECK(q.nb() == 5);
  CHECK(q.states() == 3);

  CHECK_THROWS_AS(new_model(2, 2, 5), std::invalid_argument);  // nw > n
  CHECK_THROWS_AS(new_model(0, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(new_model(2, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(new_model(2, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(new_model(2, 5, 3), NeedsCanonicalization);
}

TEST_CASE("canonicalize keeps canonical models and normalizes urn order") {
  const auto id = canonicalize(2, 2, 2);
  CHECK(!id.map.urn_swap);
  CHECK(!id.map.color_swap);
  CHECK(id.map.apply(1) == 1);

  // (4,3,3) satisfies nw <= min but gets the urns ordered: map i -> 3 - i.
  const auto swapped = canonicalize(4, 3, 3);
  CHECK(swapped.params.n1 == 3);
  CHECK(swapped.params.n2 == 4);
  CHECK(swapped.params.nw == 3);
  CHECK(swapped.map.urn_swap);
  CHECK(!swapped.map.color_swap);
  for (int i = 0; i <= 3; ++i) CHECK(swapped.map.apply(i) == 3 - i);
}

TEST_CASE("canonicalize rejects models where no relabeling reaches nw <= min(n1,n2)") {
  // min(nw, nb) = 3 > 2 = min(n1, n2): the four relabelings are
  // (2,5,3), (5,2,3), (2,5,4), (5,2,4) and none is canonical.
  CHECK_THROWS_AS(canonicalize(2, 5, 3), NotCanonicalizable);
  const int forms[4][3] = {{2, 5, 3}, {5, 2, 3}, {2, 5, 4}, {5, 2, 4}};
  for (const auto& f : forms) CHECK(f[2] > std::min(f[0], f[1]));
  // Its 3-state chain is also not any canonical kernel up to relabeling:
  // p_0 would have to be 6/10 (or 8/10 reversed), and no (n1',n2',2) with
  // n = 7 produces either.
  const auto probs = transition_probs_raw(2, 5, 3, 0);
  CHECK(probs.p == R(6, 10));
  for (const auto& cand : {ModelParams{2, 5, 2}, ModelParams{5, 2, 2}, ModelParams{3, 4, 2},
                           ModelParams{4, 3, 2}}) {
    const auto t = transition_row(cand, 0);
    CHECK(t.p != R(6, 10));
    CHECK(t.p != R(8, 10));
  }
}

TEST_CASE("canonicalize handles the degenerate color counts") {
  const auto none = canonicalize(2, 5, 0);
  CHECK(none.params.nw == 0);
  CHECK(none.params.states() == 1);

  const auto all = canonicalize(2, 5, 7);  // nb = 0: color swap collapses it
  CHECK(all.params.nw == 0);
  CHECK(all.map.color_swap);
}

TEST_CASE("canonicalize is sound on every small model (brute-force oracle)") {
  for (int n1 = 1; n1 <= 8; ++n1)
    for (int n2 = 1; n1 + n2 <= 9; ++n2)
      for (int nw = 0; nw <= n1 + n2; ++nw) {
        const int nb = n1 + n2 - nw;
        if (std::min(nw, nb) > std::min(n1, n2)) {
          CHECK_THROWS_AS(canonicalize(n1, n2, nw), NotCanonicalizable);
          continue;
        }
        const auto canon = canonicalize(n1, n2, nw);
        const auto orig = dense_kernel_on_valid_states(n1, n2, nw);
        const auto mapped = dense_kernel_on_valid_states(canon.params.n1, canon.params.n2,
                                                         canon.params.nw);
        const auto range = valid_states(n1, n2, nw);
        REQUIRE(orig.rows() == mapped.rows());
        for (int j = range.lo; j <= range.hi; ++j)
          for (int i = range.lo; i <= range.hi; ++i)
            CHECK(orig(i - range.lo, j - range.lo) ==
                  mapped(canon.map.apply(i), canon.map.apply(j)));
      }
}

TEST_CASE("transition_row matches the hand-evaluated (2,2,2) probabilities") {
  const auto p = new_model(2, 2, 2);
  const auto mid = transition_row(p, 1);
  CHECK(mid.p == R(1, 4));
  CHECK(mid.q == R(1, 4));
  CHECK(mid.r == R(1, 2));

  const auto lo = transition_row(p, 0);
  CHECK(lo.p == R(1));
  CHECK(lo.q == R(0));
  CHECK(lo.r == R(0));

  const auto hi = transition_row(p, 2);
  CHECK(hi.p == R(0));
  CHECK(hi.q == R(1));
  CHECK(hi.r == R(0));

  CHECK_THROWS_AS(transition_row(p, 3), std::out_of_range);
  CHECK_THROWS_AS(transition_row(p, -1), std::out_of_range);
}

TEST_CASE("build_kernel produces the dense (2,2,2) and (1,1,1) matrices") {
  const auto t = build_kernel(new_model(2, 2, 2)).dense();
  const Rational expected[3][3] = {{R(0), R(1, 4), R(0)}, {R(1), R(1, 2), R(1)}, {R(0), R(1, 4), R(0)}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(t(i, j) == expected[i][j]);

  const auto flip = build_kernel(new_model(1, 1, 1)).dense();
  CHECK(flip(0, 0) == R(0));
  CHECK(flip(0, 1) == R(1));
  CHECK(flip(1, 0) == R(1));
  CHECK(flip(1, 1) == R(0));
}

TEST_CASE("kernels are column-stochastic for every canonical model with n <= 12") {
  for (const auto& p : enumerate_canonical(12)) {
    const auto t = build_kernel(p).dense();
    for (int j = 0; j < t.cols(); ++j) {
      Rational sum(0);
      for (int i = 0; i < t.rows(); ++i) sum += t(i, j);
      CHECK(sum == R(1));
    }
  }
}

TEST_CASE("stationary distribution: hypergeometric law, fixed point, detailed balance") {
  const auto p = new_model(2, 2, 2);
  const auto pi = stationary_distribution(p);
  CHECK(pi == testutil::rvec({R(1, 6), R(4, 6), R(1, 6)}));

  for (const auto& params : enumerate_canonical(12)) {
    const auto t = build_kernel(params).dense();
    const auto stat = stationary_distribution(params);
    Rational sum(0);
    for (const auto& x : stat) sum += x;
    CHECK(sum == R(1));
    CHECK(t * stat == stat);
    for (int i = 0; i < t.rows(); ++i)
      for (int j = 0; j < t.cols(); ++j) CHECK(t(i, j) * stat[j] == t(j, i) * stat[i]);
  }
}

TEST_CASE("exact -> float conversion is within 1e-15 relative") {
  for (const auto& params : enumerate_canonical(10)) {
    const auto t = build_kernel(params).dense();
    for (int i = 0; i < t.rows(); ++i)
      for (int j = 0; j < t.cols(); ++j) {
        const double d = t(i, j).to_double();
        const mpf_class exact = mpf_class(t(i, j).num(), 128) / mpf_class(t(i, j).den(), 128);
        if (sgn(exact) == 0)
          CHECK(d == 0.0);
        else
          CHECK(abs(exact - mpf_class(d, 128)) <= 1e-15 * abs(exact));
      }
  }
}

TEST_CASE("verification suite passes end to end at n <= 8") {
  for (const auto& r : run_verification(8)) {
    INFO(r.name, ": ", r.detail);
    CHECK(r.pass);
  }
}
