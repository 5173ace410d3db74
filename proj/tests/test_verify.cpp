#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "gzroots/atypical.hpp"
#include "gzroots/errors.hpp"
#include "gzroots/verify.hpp"

using namespace gz;

namespace {

// Plain nested-loop matrices, independent of Eigen and of the verifier.
using M = std::vector<std::vector<cplx>>;

M zeros(int n) { return M(n, std::vector<cplx>(n, 0.0)); }

M mul(const M& a, const M& b) {
  const int n = static_cast<int>(a.size());
  M c = zeros(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (a[i][k] != 0.0)
        for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

M lin(cplx x, const M& a, cplx y, const M& b) {
  M c = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) c[i][j] = x * a[i][j] + y * b[i][j];
  return c;
}

double maxabs(const M& a) {
  double r = 0;
  for (const auto& row : a)
    for (auto x : row) r = std::max(r, std::abs(x));
  return r;
}

M from_sparse(const SparseMatrix& s) {
  M a = zeros(s.size());
  for (const auto& t : s.entries()) a[t.row][t.col] = t.value;
  return a;
}

// worst residual over every defining relation
double naive_worst(const GeneratorSet& g) {
  const int n = g.dim(), r = static_cast<int>(g.e.size());
  const cplx q = std::polar(1.0, std::arg(g.q.value()));
  std::vector<M> e, f, k, ki;
  for (int l = 0; l < r; ++l) {
    e.push_back(from_sparse(g.e[l]));
    f.push_back(from_sparse(g.f[l]));
    M a = zeros(n), b = zeros(n);
    for (int s = 0; s < n; ++s) {
      a[s][s] = std::pow(q, g.k_exponents[l][s]);
      b[s][s] = std::pow(q, -g.k_exponents[l][s]);
    }
    k.push_back(a);
    ki.push_back(b);
  }
  double worst = 0;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const int aij = i == j ? 2 : (std::abs(i - j) == 1 ? -1 : 0);
      const cplx qa = std::pow(q, aij);
      worst = std::max(worst, maxabs(lin(1.0, mul(mul(k[i], e[j]), ki[i]), -qa, e[j])));
      worst = std::max(worst, maxabs(lin(1.0, mul(mul(k[i], f[j]), ki[i]), -1.0 / qa, f[j])));
      M c = lin(1.0, mul(e[i], f[j]), -1.0, mul(f[j], e[i]));
      if (i == j) c = lin(1.0, c, -1.0 / (q - 1.0 / q), lin(1.0, k[i], -1.0, ki[i]));
      worst = std::max(worst, maxabs(c));
      if (std::abs(i - j) > 1) {
        worst = std::max(worst, maxabs(lin(1.0, mul(e[i], e[j]), -1.0, mul(e[j], e[i]))));
        worst = std::max(worst, maxabs(lin(1.0, mul(f[i], f[j]), -1.0, mul(f[j], f[i]))));
      }
      if (std::abs(i - j) == 1) {
        const cplx two = q + 1.0 / q;
        for (const auto* x : {&e, &f}) {
          const auto& X = *x;
          M s = lin(1.0, mul(mul(X[i], X[i]), X[j]), -two, mul(mul(X[i], X[j]), X[i]));
          s = lin(1.0, s, 1.0, mul(mul(X[j], X[i]), X[i]));
          worst = std::max(worst, maxabs(s));
        }
      }
    }
  return worst;
}

double worst(const VerificationReport& r) {
  double w = 0;
  for (const auto& [k, v] : r.residuals) w = std::max(w, v);
  return w;
}

GeneratorSet corrupted(GeneratorSet g, double delta) {
  std::vector<Triplet> t = g.f[0].entries();
  t[t.size() / 2].value += delta;
  g.f[0] = SparseMatrix(g.dim(), std::move(t));
  return g;
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("Cartan matrix") {
    Eigen::MatrixXi a = cartan_matrix(3);
    CHECK(a(0, 0) == 2);
    CHECK(a(0, 1) == -1);
    CHECK(a(1, 0) == -1);
    CHECK(a(0, 2) == 0);
  }

  TEST_CASE("verifier agrees with a naive oracle") {
    std::vector<GeneratorSet> reps{build_generic_rep(TopRow({3, 1, 0}), QPoint::generic(0.37)),
                                   build_generic_rep(TopRow({4, 2, 1, 0}), QPoint::generic(0.37)),
                                   build_generic_rep(TopRow({5, 3, 2, 1, 0}), QPoint::generic(1.1)),
                                   build_flat_sl3(TopRow({4, 2, 0}), UnityOrder(3)),
                                   build_atypical_sl3(TopRow({5, 2, 0}), UnityOrder(3))};
    for (const auto& g : reps) {
      VerificationReport r = check_defining_relations(g, 1e-9);
      CHECK(r.passed);
      CHECK(std::abs(worst(r) - naive_worst(g)) < 1e-12);
      GeneratorSet bad = corrupted(g, 1e-3);
      VerificationReport rb = check_defining_relations(bad, 1e-9);
      CHECK_FALSE(rb.passed);
      CHECK(std::abs(worst(rb) - naive_worst(bad)) < 1e-12);
    }
  }

  TEST_CASE("fault of ten times the tolerance is caught") {
    GeneratorSet g = build_generic_rep(TopRow({4, 2, 0}), QPoint::generic(0.37));
    for (double tol : {1e-9, 1e-6})
      CHECK_FALSE(check_defining_relations(corrupted(g, 10 * tol), tol).passed);
  }

  TEST_CASE("serial and parallel residuals match") {
    GeneratorSet g = build_generic_rep(TopRow({5, 3, 1, 0}), QPoint::generic(0.37));
    CHECK(check_defining_relations(g, 1e-9, ExecPolicy::serial).residuals ==
          check_defining_relations(g, 1e-9, ExecPolicy::parallel).residuals);
  }

  TEST_CASE("zero generators") {
    GeneratorSet g = build_generic_rep(TopRow({3, 1, 0}), QPoint::generic(0.37));
    for (auto& s : g.e) s = SparseMatrix(g.dim(), {});
    for (auto& s : g.f) s = SparseMatrix(g.dim(), {});
    for (auto& k : g.k_exponents) std::fill(k.begin(), k.end(), 0);
    VerificationReport r = check_defining_relations(g);
    CHECK(r.passed);
    CHECK(r.residuals.at("e_f") == 0.0);
    CHECK(static_cast<int>(find_singular_vectors(g).size()) == g.dim());
  }

  TEST_CASE("root of unity constraints") {
    GeneratorSet g = build_flat_sl3(TopRow({4, 2, 0}), UnityOrder(3));
    VerificationReport r = check_root_of_unity_constraints(g, UnityOrder(3), 1e-9);
    CHECK(r.passed);
    CHECK(r.residuals.at("k_pow_m") == 0.0);
    try {
      check_root_of_unity_constraints(build_generic_rep(TopRow({3, 1, 0}), QPoint::generic(0.37)), UnityOrder(3));
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::OrderMismatch);
    }
    CHECK_THROWS_AS(check_root_of_unity_constraints(g, UnityOrder(5)), Error);
  }

  TEST_CASE("singular vectors and closures") {
    GeneratorSet gen = build_generic_rep(TopRow({3, 1, 0}), QPoint::generic(0.37));
    CHECK(find_singular_vectors(gen).size() == 1);
    CHECK(invariant_subspace_scan(gen) == std::vector<int>{3});

    GeneratorSet flat = build_flat_sl3(TopRow({4, 2, 0}), UnityOrder(3));
    auto sv = find_singular_vectors(flat);
    CHECK(sv.size() == 2);
    auto dims = invariant_subspace_scan(flat);
    std::sort(dims.begin(), dims.end());
    CHECK(dims == std::vector<int>{1, 7});
    ModuleAnalysis a = analyze_module(flat);
    CHECK(a.direct_sum);
    for (const auto& c : a.components) CHECK(c.no_proper_subspace);

    // ranks do not move when the tolerance changes by a factor of ten
    for (double tol : {1e-8, 1e-6}) {
      auto d2 = invariant_subspace_scan(flat, tol);
      std::sort(d2.begin(), d2.end());
      CHECK(d2 == dims);
    }
  }

  TEST_CASE("dense guard") {
    GeneratorSet big = build_generic_rep(TopRow({20, 10, 0}), QPoint::generic(0.37));
    REQUIRE(big.dim() > max_dense_dim);
    try {
      check_defining_relations(big);
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DimensionTooLarge);
    }
  }
}
