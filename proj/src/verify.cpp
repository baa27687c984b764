#include "bl/verify.hpp"

#include <cmath>
#include <sstream>

#include "bl/mixing.hpp"
#include "bl/oracle.hpp"
#include "bl/spectral.hpp"
#include "bl/symmetry.hpp"

namespace bl {

namespace {

std::string context(const ModelParams& p) {
  std::ostringstream os;
  os << "(" << p.n1 << "," << p.n2 << "," << p.nw << ")";
  return os.str();
}

struct Checker {
  CheckResult result;

  explicit Checker(std::string name) {
    result.name = std::move(name);
    result.pass = true;
  }

  void expect(bool ok, const std::string& where, const char* what) {
    ++result.cases;
    if (!ok) {
      if (result.pass) result.detail = std::string(what) + " at " + where;
      result.pass = false;
    }
  }
};

const std::vector<long>& moment_steps() {
  static const std::vector<long> steps{0, 1, 2, 3, 5, 8, 13, 20};
  return steps;
}

CheckResult check_column_stochastic(const std::vector<ModelParams>& models) {
  Checker c("core/column-stochastic");
  for (const auto& p : models) {
    const auto kernel = build_kernel(p);
    const auto t = kernel.dense();
    bool ok = true;
    for (int j = 0; j < t.cols(); ++j) {
      Rational sum(0);
      for (int i = 0; i < t.rows(); ++i) {
        sum += t(i, j);
        if (t(i, j) < Rational(0) || t(i, j) > Rational(1)) ok = false;
      }
      if (sum != Rational(1)) ok = false;
    }
    if (!kernel.q.front().is_zero()) ok = false;
    if (!kernel.p.back().is_zero()) ok = false;
    c.expect(ok, context(p), "column sums / entry range");
  }
  return c.result;
}

CheckResult check_detailed_balance(const std::vector<ModelParams>& models) {
  Checker c("core/detailed-balance");
  for (const auto& p : models) {
    const auto t = build_kernel(p).dense();
    const auto pi = stationary_distribution(p);
    bool ok = true;
    for (int i = 0; i < t.rows(); ++i)
      for (int j = 0; j < t.cols(); ++j)
        if (t(i, j) * pi[j] != t(j, i) * pi[i]) ok = false;
    c.expect(ok, context(p), "T_ij pi_j != T_ji pi_i");
  }
  return c.result;
}

CheckResult check_stationary_fixed_point(const std::vector<ModelParams>& models) {
  Checker c("core/stationary-fixed-point");
  for (const auto& p : models) {
    const auto t = build_kernel(p).dense();
    const auto pi = stationary_distribution(p);
    Rational sum(0);
    for (const auto& x : pi) sum += x;
    const auto t_pi = t * pi;
    c.expect(sum == Rational(1) && t_pi == pi, context(p), "T pi != pi or sum pi != 1");
  }
  return c.result;
}

CheckResult check_backend_consistency(const std::vector<ModelParams>& models) {
  Checker c("core/backend-consistency");
  for (const auto& p : models) {
    const auto t = build_kernel(p).dense();
    bool ok = true;
    for (int i = 0; i < t.rows(); ++i)
      for (int j = 0; j < t.cols(); ++j) {
        // Measure the conversion error in 128-bit floats.
        const mpf_class exact = mpf_class(t(i, j).num(), 128) / mpf_class(t(i, j).den(), 128);
        const mpf_class approx(t(i, j).to_double(), 128);
        if (sgn(exact) == 0) {
          if (sgn(approx) != 0) ok = false;
        } else if (abs(exact - approx) > 1e-15 * abs(exact)) {
          ok = false;
        }
      }
    c.expect(ok, context(p), "exact->float conversion off by more than 1e-15 relative");
  }
  return c.result;
}

CheckResult check_canonicalize_soundness(int max_n) {
  Checker c("core/canonicalize-soundness");
  for (int n1 = 1; n1 <= max_n - 1; ++n1)
    for (int n2 = 1; n1 + n2 <= max_n; ++n2)
      for (int nw = 0; nw <= n1 + n2; ++nw) {
        const ModelParams raw{n1, n2, nw};
        const int nb = n1 + n2 - nw;
        const bool reachable = std::min(nw, nb) <= std::min(n1, n2);
        bool threw = false;
        CanonicalModel canon;
        try {
          canon = canonicalize(n1, n2, nw);
        } catch (const NotCanonicalizable&) {
          threw = true;
        }
        if (threw) {
          // Brute-force confirmation that no relabeling of the 4-tuple works.
          const int forms[4][3] = {{n1, n2, nw}, {n2, n1, nw}, {n1, n2, nb}, {n2, n1, nb}};
          bool any = false;
          for (const auto& f : forms)
            if (f[2] <= std::min(f[0], f[1])) any = true;
          c.expect(!reachable && !any, context(raw), "canonicalize threw although a relabeling exists");
          continue;
        }
        bool ok = reachable;
        const auto& cp = canon.params;
        ok = ok && cp.nw <= std::min(cp.n1, cp.n2) && cp.n() == n1 + n2;
        // Kernel equality after conjugating by the recorded permutation.
        const auto orig = dense_kernel_on_valid_states(n1, n2, nw);
        const auto mapped = dense_kernel_on_valid_states(cp.n1, cp.n2, cp.nw);
        const auto range = valid_states(n1, n2, nw);
        ok = ok && orig.rows() == mapped.rows();
        if (ok)
          for (int j = range.lo; j <= range.hi && ok; ++j)
            for (int i = range.lo; i <= range.hi && ok; ++i) {
              const int ci = canon.map.apply(i);
              const int cj = canon.map.apply(j);
              if (ci < 0 || ci > cp.nw || cj < 0 || cj > cp.nw ||
                  orig(i - range.lo, j - range.lo) != mapped(ci, cj))
                ok = false;
            }
        c.expect(ok, context(raw), "canonical kernel not permutation-similar");
      }
  return c.result;
}

CheckResult check_eigen_equation(const std::vector<ModelParams>& models) {
  Checker c("spectral/eigen-equation");
  for (const auto& p : models) {
    const auto t = build_kernel(p).dense();
    bool ok = true;
    for (int k = 0; k <= p.nw; ++k) {
      const auto lam = eigenvalue(p, k);
      for (const auto& vec : {c_hypergeometric(p, k), pascal_to_c(b_coefficients(p, k))}) {
        const auto t_vec = t * vec;
        bool nonzero = false;
        for (int i = 0; i < p.states(); ++i) {
          if (!vec[i].is_zero()) nonzero = true;
          if (t_vec[i] != lam * vec[i]) ok = false;
        }
        if (!nonzero) ok = false;
      }
    }
    c.expect(ok, context(p), "T c != lambda c");
  }
  return c.result;
}

CheckResult check_spectrum_shape(const std::vector<ModelParams>& models) {
  Checker c("spectral/spectrum-simple");
  for (const auto& p : models) {
    const auto lams = spectrum(p);
    bool ok = lams.front() == Rational(1);
    for (std::size_t k = 1; k < lams.size(); ++k)
      if (!(lams[k] < lams[k - 1])) ok = false;
    for (const auto& l : lams)
      if (l < Rational(-1) || l > Rational(1)) ok = false;
    c.expect(ok, context(p), "spectrum not strictly decreasing in [-1,1]");
  }
  return c.result;
}

CheckResult check_triangularization(const std::vector<ModelParams>& models) {
  Checker c("spectral/triangularization");
  for (const auto& p : models) {
    const int s = p.states();
    const auto t = build_kernel(p).dense();
    const auto t_tri = triangularized_matrix(p);
    const auto conj = pascal_forward(s) * t * pascal_inverse(s);
    bool ok = (conj == t_tri);
    const auto lams = spectrum(p);
    for (int i = 0; i < s; ++i)
      if (t_tri(i, i) != lams[i]) ok = false;
    for (int i = 0; i < s; ++i)
      for (int j = i + 1; j < s; ++j)
        if (!t_tri(i, j).is_zero()) ok = false;
    c.expect(ok, context(p), "P T P^-1 != closed-form triangular matrix");
  }
  return c.result;
}

CheckResult check_pascal_roundtrip(int max_len) {
  Checker c("spectral/pascal-roundtrip");
  for (int len = 1; len <= max_len; ++len) {
    bool ok = pascal_forward(len) * pascal_inverse(len) == Matrix<Rational>::identity(len);
    std::vector<Rational> probe(len);
    for (int i = 0; i < len; ++i) probe[i] = Rational((7L * i + 3) % 11 - 5, i + 2);
    for (int u = 0; u < len; ++u) {
      std::vector<Rational> e(len, Rational(0));
      e[u] = Rational(1);
      if (c_to_b(pascal_to_c(e)) != e || pascal_to_c(c_to_b(e)) != e) ok = false;
    }
    if (c_to_b(pascal_to_c(probe)) != probe || pascal_to_c(c_to_b(probe)) != probe) ok = false;
    c.expect(ok, "length " + std::to_string(len), "pascal transform round trip failed");
  }
  return c.result;
}

CheckResult check_b_structure(const std::vector<ModelParams>& models) {
  Checker c("spectral/b-closed-form");
  for (const auto& p : models) {
    bool ok = true;
    for (int k = 0; k <= p.nw; ++k) {
      TriangularCoefficients b;
      try {
        b = b_coefficients(p, k);  // cross-checks recursion vs Pochhammer form
      } catch (const std::logic_error&) {
        ok = false;
        break;
      }
      if (b.b[k] != Rational(1)) ok = false;
      for (int i = 0; i < k; ++i)
        if (!b.b[i].is_zero()) ok = false;
      if (c_to_b(pascal_to_c(b)) != b.b) ok = false;
    }
    c.expect(ok, context(p), "triangular coefficients malformed");
  }
  return c.result;
}

CheckResult check_dual_route(const std::vector<ModelParams>& models) {
  Checker c("spectral/dual-route-proportional");
  for (const auto& p : models) {
    bool ok = true;
    for (int k = 0; k <= p.nw; ++k) {
      const auto hyper = c_hypergeometric(p, k);
      const auto pascal = pascal_to_c(b_coefficients(p, k));
      if (pascal[0].is_zero()) {
        ok = false;
        break;
      }
      const Rational scale = hyper[0] / pascal[0];
      if (scale.is_zero()) {
        ok = false;
        break;
      }
      for (int i = 0; i < p.states(); ++i)
        if (hyper[i] != scale * pascal[i]) ok = false;
    }
    c.expect(ok, context(p), "hypergeometric and Pascal-route eigenvectors not proportional");
  }
  return c.result;
}

CheckResult check_charpoly(const std::vector<ModelParams>& models) {
  Checker c("spectral/charpoly-roots");
  for (const auto& p : models) {
    const auto kernel = build_kernel(p);
    const auto lams = spectrum(p);
    bool ok = true;
    for (const auto& lam : lams)
      if (!charpoly_residual(kernel, lam).is_zero()) ok = false;
    for (std::size_t k = 0; k + 1 < lams.size(); ++k) {
      const Rational mid = (lams[k] + lams[k + 1]) / Rational(2);
      if (charpoly_residual(kernel, mid).is_zero()) ok = false;
    }
    c.expect(ok, context(p), "charpoly residual wrong at eigenvalue or midpoint");
  }
  return c.result;
}

CheckResult check_basis_invertible(const std::vector<ModelParams>& models) {
  Checker c("spectral/basis-invertible");
  for (const auto& p : models)
    c.expect(!determinant(eigen_basis(p)).is_zero(), context(p), "det(S) == 0");
  return c.result;
}

CheckResult check_orthogonality(const std::vector<ModelParams>& models) {
  Checker c("symmetry/orthogonality-relation");
  for (const auto& p : models) {
    const auto sys = symmetric_system(p);
    bool ok = true;
    for (int i = 0; i < sys.states(); ++i)
      for (int j = 0; j < sys.states(); ++j) {
        Rational sum(0);
        for (int k = 0; k < sys.states(); ++k) sum += sys.delta_sq[k] * sys.c(i, k) * sys.c(j, k);
        const Rational expected = (i == j) ? sys.pi[j] : Rational(0);
        if (sum != expected) ok = false;
      }
    for (const auto& d : sys.delta_sq)
      if (!(d > Rational(0))) ok = false;
    c.expect(ok, context(p), "sum_k Delta^2 c(i)c(j) != pi_j delta_ij");
  }
  return c.result;
}

CheckResult check_normalization_invariance(const std::vector<ModelParams>& models) {
  Checker c("symmetry/normalization-invariance");
  const Rational scales[] = {Rational(2), Rational(-3), Rational(7, 5)};
  for (const auto& p : models) {
    const auto sys = symmetric_system(p);
    bool ok = true;
    for (const auto& s : scales) {
      Matrix<Rational> scaled = sys.c;
      for (int k = 0; k < sys.states(); ++k)
        for (int i = 0; i < sys.states(); ++i) scaled(i, k) = sys.c(i, k) * s;
      const auto sys2 = symmetric_system(p, scaled);
      for (int k = 0; k < sys.states() && ok; ++k)
        for (int i = 0; i < sys.states() && ok; ++i)
          for (int j = 0; j < sys.states(); ++j)
            if (sys.delta_sq[k] * sys.c(i, k) * sys.c(j, k) !=
                sys2.delta_sq[k] * sys2.c(i, k) * sys2.c(j, k)) {
              ok = false;
              break;
            }
    }
    c.expect(ok, context(p), "Delta^2 c c changed under rescaling");
  }
  return c.result;
}

CheckResult check_symmetrized_matrix(const std::vector<ModelParams>& models) {
  Checker c("symmetry/z-symmetric");
  for (const auto& p : models) {
    const auto z = symmetrized_matrix(p);
    const auto sys = symmetric_system(p);
    const auto t = to_double(build_kernel(p).dense());
    const auto pi = to_double(sys.pi);
    const int s = p.states();
    bool ok = true;
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) {
        if (std::abs(z(i, j) - z(j, i)) > 1e-12) ok = false;
        const double conj = std::sqrt(pi[j]) * t(i, j) / std::sqrt(pi[i]);
        if (std::abs(z(i, j) - conj) > 1e-12 * std::max(1.0, std::abs(conj))) ok = false;
      }
    for (int k = 0; k < s; ++k) {
      for (int i = 0; i < s; ++i) {
        double acc = 0;
        for (int j = 0; j < s; ++j) acc += z(i, j) * sys.w(j, k);
        if (std::abs(acc - sys.lambda[k].to_double() * sys.w(i, k)) > 1e-9) ok = false;
      }
      for (int l = 0; l < s; ++l) {
        double dot = 0;
        for (int i = 0; i < s; ++i) dot += sys.w(i, k) * sys.w(i, l);
        if (std::abs(dot - (k == l ? 1.0 : 0.0)) > 1e-10) ok = false;
      }
    }
    // pi-orthonormality of v, exactly, via the Delta-free system.
    for (int k = 0; k < s; ++k)
      for (int l = 0; l < s; ++l) {
        Rational dot(0);
        for (int i = 0; i < s; ++i) dot += sys.pi[i] * sys.v_hat(i, k) * sys.v_hat(i, l);
        if (k == l) {
          if (sys.delta_sq[k] * dot != Rational(1)) ok = false;
        } else if (!dot.is_zero()) {
          ok = false;
        }
      }
    c.expect(ok, context(p), "symmetrized system violated");
  }
  return c.result;
}

CheckResult check_spectral_power(const std::vector<ModelParams>& models) {
  Checker c("symmetry/spectral-power-oracle");
  for (const auto& p : models) {
    const auto sys = symmetric_system(p);
    const auto t = build_kernel(p).dense();
    bool ok = spectral_power(sys, 0) == Matrix<Rational>::identity(p.states());
    ok = ok && spectral_power(sys, 1) == t;
    Matrix<Rational> expected = Matrix<Rational>::identity(p.states());
    for (long m = 1; m <= 20 && ok; ++m) {
      expected = t * expected;
      if (spectral_power(sys, m) != expected) ok = false;
    }
    c.expect(ok, context(p), "spectral power != dense power");
  }
  return c.result;
}

CheckResult check_appendix_identity(const std::vector<ModelParams>& models) {
  Checker c("mixing/sum-vk-squared");
  for (const auto& p : models) {
    const auto sys = symmetric_system(p);
    bool ok = true;
    for (int i = 0; i < sys.states(); ++i) {
      Rational sum(0);
      for (int k = 1; k < sys.states(); ++k) sum += sys.v_pair(k, i, i);
      if (sum != Rational(1) / sys.pi[i] - Rational(1)) ok = false;
    }
    c.expect(ok, context(p), "sum_{k>=1} v_k(i)^2 != 1/pi_i - 1");
  }
  return c.result;
}

CheckResult check_eigen_moments(const std::vector<ModelParams>& models) {
  Checker c("mixing/eigen-moment-identity");
  for (const auto& p : models) {
    const auto sys = symmetric_system(p);
    const int s = sys.states();
    bool ok = true;
    for (const long m : moment_steps()) {
      std::vector<Rational> lam_m(s);
      for (int k = 0; k < s; ++k) lam_m[k] = Rational::pow(sys.lambda[k], m);
      for (int j = 0; j < s && ok; ++j) {
        const auto rho = distribution_at(sys, j, m);
        for (int k = 0; k < s; ++k) {
          Rational lhs(0);
          for (int i = 0; i < s; ++i) lhs += sys.v_hat(i, k) * rho[i];
          if (lhs != lam_m[k] * sys.v_hat(j, k)) {
            ok = false;
            break;
          }
        }
      }
    }
    c.expect(ok, context(p), "E_rho[v_k] != lambda^m v_k(j)");
  }
  return c.result;
}

CheckResult check_distribution_oracle(const std::vector<ModelParams>& models) {
  Checker c("mixing/distribution-vs-dense");
  for (const auto& p : models) {
    const auto sys = symmetric_system(p);
    const auto t = build_kernel(p).dense();
    bool ok = true;
    for (int j = 0; j < p.states() && ok; ++j) {
      std::vector<Rational> x(p.states(), Rational(0));
      x[j] = Rational(1);
      if (distribution_at(sys, j, 0) != x) ok = false;
      for (long m = 1; m <= 20 && ok; ++m) {
        x = t * x;
        if (distribution_at(sys, j, m) != x) ok = false;
      }
    }
    c.expect(ok, context(p), "rho_m != column of T^m");
  }
  return c.result;
}

CheckResult check_tv_properties(const std::vector<ModelParams>& models) {
  Checker c("mixing/tv-properties");
  for (const auto& p : models) {
    const auto sys = symmetric_system(p);
    bool ok = true;
    for (int j = 0; j <= p.nw; ++j) {
      std::vector<Rational> point(p.states(), Rational(0));
      point[j] = Rational(1);
      if (tv_distance(point, sys.pi) != Rational(1) - sys.pi[j]) ok = false;
      if (!tv_distance(point, point).is_zero()) ok = false;
      for (const long m : {0L, 1L, 5L}) {
        const auto rho = distribution_at(sys, j, m);
        const Rational tv = tv_distance(rho, sys.pi);
        if (tv != tv_distance(sys.pi, rho)) ok = false;
        if (tv < Rational(0) || tv > Rational(1)) ok = false;
      }
    }
    c.expect(ok, context(p), "TV distance property violated");
  }
  return c.result;
}

}  // namespace

std::vector<ModelParams> enumerate_canonical(int max_n) {
  std::vector<ModelParams> out;
  for (int n1 = 1; n1 < max_n; ++n1)
    for (int n2 = 1; n1 + n2 <= max_n; ++n2)
      for (int nw = 1; nw <= std::min(n1, n2); ++nw) out.push_back(ModelParams{n1, n2, nw});
  return out;
}

std::vector<CheckResult> run_verification(int max_n) {
  if (max_n < 2) throw std::invalid_argument("run_verification: max_n must be >= 2");
  const auto models = enumerate_canonical(max_n);
  std::vector<CheckResult> results;
  results.push_back(check_column_stochastic(models));
  results.push_back(check_detailed_balance(models));
  results.push_back(check_stationary_fixed_point(models));
  results.push_back(check_backend_consistency(models));
  results.push_back(check_canonicalize_soundness(max_n));
  results.push_back(check_eigen_equation(models));
  results.push_back(check_spectrum_shape(models));
  results.push_back(check_triangularization(models));
  results.push_back(check_pascal_roundtrip(max_n + 1));
  results.push_back(check_b_structure(models));
  results.push_back(check_dual_route(models));
  results.push_back(check_charpoly(models));
  results.push_back(check_basis_invertible(models));
  results.push_back(check_orthogonality(models));
  results.push_back(check_normalization_invariance(models));
  results.push_back(check_symmetrized_matrix(models));
  results.push_back(check_spectral_power(models));
  results.push_back(check_appendix_identity(models));
  results.push_back(check_eigen_moments(models));
  results.push_back(check_distribution_oracle(models));
  results.push_back(check_tv_properties(models));
  return results;
}

}  // namespace bl
