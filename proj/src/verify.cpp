#include "gzroots/verify.hpp"

#include <algorithm>
#include <functional>
#include <utility>

#include "gzroots/errors.hpp"

namespace gz {

namespace {

using Mat = Eigen::MatrixXcd;

double max_norm(const Mat& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

Mat mat_power(const Mat& a, int n) {
  Mat r = Mat::Identity(a.rows(), a.cols());
  for (int i = 0; i < n; ++i) r = r * a;
  return r;
}

// Orthonormal basis for the column span, rank decided at tol.
Mat orthonormal_span(const Mat& a, double tol) {
  if (a.cols() == 0) return Mat(a.rows(), 0);
  Eigen::BDCSVD<Mat> svd(a, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  int r = 0;
  while (r < s.size() && s[r] > tol) ++r;
  return svd.matrixU().leftCols(r);
}

Mat null_space(const Mat& a, double tol) {
  Eigen::BDCSVD<Mat> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  int r = 0;
  while (r < s.size() && s[r] > tol) ++r;
  return svd.matrixV().rightCols(a.cols() - r);
}

Mat stacked_e(const DenseGenerators& d) {
  Mat out(d.dim * static_cast<int>(d.e.size()), d.dim);
  for (std::size_t l = 0; l < d.e.size(); ++l) out.middleRows(static_cast<int>(l) * d.dim, d.dim) = d.e[l];
  return out;
}

}  // namespace

Eigen::MatrixXi cartan_matrix(int rank) {
  Eigen::MatrixXi a = Eigen::MatrixXi::Zero(rank, rank);
  for (int i = 0; i < rank; ++i) {
    a(i, i) = 2;
    if (i + 1 < rank) a(i, i + 1) = a(i + 1, i) = -1;
  }
  return a;
}

void VerificationReport::record(const std::string& name, double value) {
  auto [it, fresh] = residuals.emplace(name, value);
  if (!fresh) it->second = std::max(it->second, value);
  if (!(value <= tolerance)) passed = false;
}

void VerificationReport::merge(const VerificationReport& other) {
  for (const auto& [name, v] : other.residuals) record(name, v);
  if (!other.passed) passed = false;
}

DenseGenerators to_dense(const GeneratorSet& g) {
  const int n = g.dim();
  if (n > max_dense_dim)
    throw Error(ErrorKind::DimensionTooLarge,
                "dimension " + std::to_string(n) + " exceeds the dense limit " + std::to_string(max_dense_dim));
  DenseGenerators d;
  d.dim = n;
  d.q = g.q.value();
  auto dense = [n](const SparseMatrix& s) {
    Mat a = Mat::Zero(n, n);
    for (const auto& t : s.entries()) a(t.row, t.col) = t.value;
    return a;
  };
  for (const auto& s : g.e) d.e.push_back(dense(s));
  for (const auto& s : g.f) d.f.push_back(dense(s));
  const int r = static_cast<int>(g.e.size());
  for (int l = 0; l < r; ++l) {
    Mat k = Mat::Zero(n, n), ki = Mat::Zero(n, n);
    for (int a = 0; a < n; ++a) {
      const int x = g.k_exponents[l][a];
      k(a, a) = g.q.power(x);
      ki(a, a) = g.q.power(-x);
    }
    d.k.push_back(std::move(k));
    d.k_inv.push_back(std::move(ki));
  }
  return d;
}

VerificationReport check_defining_relations(const GeneratorSet& g, double tol, ExecPolicy policy) {
  const DenseGenerators d = to_dense(g);
  const int r = static_cast<int>(d.e.size());
  const Eigen::MatrixXi a = cartan_matrix(r);
  const cplx q = d.q, qi = 1.0 / q;
  const cplx two = q + qi;

  std::vector<std::pair<std::string, std::function<double()>>> tasks;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const cplx qa = std::pow(q, a(i, j));
      tasks.emplace_back("k_e", [&, i, j, qa] { return max_norm(d.k[i] * d.e[j] * d.k_inv[i] - qa * d.e[j]); });
      tasks.emplace_back("k_f",
                         [&, i, j, qa] { return max_norm(d.k[i] * d.f[j] * d.k_inv[i] - d.f[j] / qa); });
      tasks.emplace_back("e_f", [&, i, j] {
        Mat c = d.e[i] * d.f[j] - d.f[j] * d.e[i];
        if (i == j) c -= (d.k[i] - d.k_inv[i]) / (q - qi);
        return max_norm(c);
      });
      if (std::abs(i - j) > 1) {
        tasks.emplace_back("e_e_distant", [&, i, j] { return max_norm(d.e[i] * d.e[j] - d.e[j] * d.e[i]); });
        tasks.emplace_back("f_f_distant", [&, i, j] { return max_norm(d.f[i] * d.f[j] - d.f[j] * d.f[i]); });
      }
      if (std::abs(i - j) == 1) {
        tasks.emplace_back("serre_e", [&, i, j] {
          return max_norm(d.e[i] * d.e[i] * d.e[j] - two * d.e[i] * d.e[j] * d.e[i] + d.e[j] * d.e[i] * d.e[i]);
        });
        tasks.emplace_back("serre_f", [&, i, j] {
          return max_norm(d.f[i] * d.f[i] * d.f[j] - two * d.f[i] * d.f[j] * d.f[i] + d.f[j] * d.f[i] * d.f[i]);
        });
      }
    }

  std::vector<double> values(tasks.size(), 0.0);
  const int count = static_cast<int>(tasks.size());
  if (policy == ExecPolicy::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int t = 0; t < count; ++t) values[t] = tasks[t].second();
  } else {
    for (int t = 0; t < count; ++t) values[t] = tasks[t].second();
  }

  VerificationReport rep;
  rep.tolerance = tol;
  for (const char* name : {"k_e", "k_f", "e_f"}) rep.record(name, 0.0);
  if (r >= 2)
    for (const char* name : {"serre_e", "serre_f"}) rep.record(name, 0.0);
  if (r >= 3)
    for (const char* name : {"e_e_distant", "f_f_distant"}) rep.record(name, 0.0);
  for (int t = 0; t < count; ++t) rep.record(tasks[t].first, values[t]);
  return rep;
}

VerificationReport check_root_of_unity_constraints(const GeneratorSet& g, UnityOrder m, double tol) {
  if (!g.q.is_root() || g.q.order() != m.m)
    throw Error(ErrorKind::OrderMismatch, "representation was not built at a root of unity of order " +
                                              std::to_string(m.m));
  const DenseGenerators d = to_dense(g);
  VerificationReport rep;
  rep.tolerance = tol;
  rep.record("e_pow_m", 0.0);
  rep.record("f_pow_m", 0.0);
  rep.record("k_pow_m", 0.0);
  for (std::size_t l = 0; l < d.e.size(); ++l) {
    rep.record("e_pow_m", max_norm(mat_power(d.e[l], m.m)));
    rep.record("f_pow_m", max_norm(mat_power(d.f[l], m.m)));
    // k is diagonal with entries q^x, so k^m has entries q^(m x), exactly 1
    double worst = 0.0;
    for (int a = 0; a < d.dim; ++a)
      worst = std::max(worst, std::abs(g.q.power(m.m * g.k_exponents[l][a]) - 1.0));
    rep.record("k_pow_m", worst);
  }
  return rep;
}

std::vector<Eigen::VectorXcd> find_singular_vectors(const GeneratorSet& g, double tol) {
  const DenseGenerators d = to_dense(g);
  const Mat e = stacked_e(d);
  std::map<std::vector<int>, std::vector<int>> weights;
  for (int a = 0; a < d.dim; ++a) {
    std::vector<int> w;
    for (const auto& k : g.k_exponents) w.push_back(k[a]);
    weights[w].push_back(a);
  }
  std::vector<Eigen::VectorXcd> out;
  for (const auto& [w, idx] : weights) {
    Mat cols(e.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) cols.col(static_cast<Eigen::Index>(c)) = e.col(idx[c]);
    const Mat ns = null_space(cols, tol);
    for (Eigen::Index c = 0; c < ns.cols(); ++c) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d.dim);
      for (std::size_t t = 0; t < idx.size(); ++t) v[idx[t]] = ns(static_cast<Eigen::Index>(t), c);
      out.push_back(std::move(v));
    }
  }
  return out;
}

Mat invariant_closure(const DenseGenerators& d, const Mat& start, double tol) {
  Mat span = orthonormal_span(start, tol);
  for (int it = 0; it <= d.dim; ++it) {
    std::vector<Mat> parts{span};
    for (std::size_t l = 0; l < d.e.size(); ++l) {
      parts.push_back(d.e[l] * span);
      parts.push_back(d.f[l] * span);
      parts.push_back(d.k[l] * span);
    }
    Eigen::Index total = 0;
    for (const auto& p : parts) total += p.cols();
    Mat all(d.dim, total);
    Eigen::Index at = 0;
    for (const auto& p : parts) {
      all.middleCols(at, p.cols()) = p;
      at += p.cols();
    }
    Mat next = orthonormal_span(all, tol);
    if (next.cols() == span.cols()) return next;
    span = std::move(next);
  }
  return span;
}

std::vector<int> invariant_subspace_scan(const GeneratorSet& g, double tol) {
  const DenseGenerators d = to_dense(g);
  std::vector<int> dims;
  for (const auto& v : find_singular_vectors(g, tol))
    dims.push_back(static_cast<int>(invariant_closure(d, v, tol).cols()));
  return dims;
}

int numerical_rank(const Mat& a, double tol) { return static_cast<int>(orthonormal_span(a, tol).cols()); }

ModuleAnalysis analyze_module(const GeneratorSet& g, double tol) {
  const DenseGenerators d = to_dense(g);
  const Mat e = stacked_e(d);
  ModuleAnalysis out;
  out.singular_vectors = find_singular_vectors(g, tol);
  std::vector<Mat> spans;
  int total = 0;
  for (const auto& v : out.singular_vectors) {
    Mat w = invariant_closure(d, v, tol);
    ComponentInfo c;
    c.dim = static_cast<int>(w.cols());
    c.kernel_dim = static_cast<int>(null_space(e * w, tol).cols());
    c.no_proper_subspace = c.kernel_dim == 1;
    out.components.push_back(c);
    total += c.dim;
    spans.push_back(std::move(w));
  }
  if (total == d.dim && d.dim > 0) {
    Mat all(d.dim, total);
    Eigen::Index at = 0;
    for (const auto& w : spans) {
      all.middleCols(at, w.cols()) = w;
      at += w.cols();
    }
    out.direct_sum = numerical_rank(all, tol) == d.dim;
  }
  return out;
}

}  // namespace gz
