#include "gzroots/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gz {

double Laurent::cancel_tolerance = 1e-9;

Laurent::Laurent(int v, std::vector<cplx> c) : v_(v), c_(std::move(c)) {}

Laurent Laurent::from_coefficients(int v, std::vector<cplx> c) {
  std::size_t drop = 0;
  while (drop < c.size() && c[drop] == 0.0) ++drop;
  if (drop == c.size()) return Laurent();
  c.erase(c.begin(), c.begin() + static_cast<long>(drop));
  return Laurent(v + static_cast<int>(drop), std::move(c));
}

Laurent Laurent::constant(cplx c, int terms) { return monomial(c, 0, terms); }

Laurent Laurent::monomial(cplx c, int v, int terms) {
  if (c == 0.0) return Laurent();
  std::vector<cplx> cs(terms, 0.0);
  cs[0] = c;
  return Laurent(v, std::move(cs));
}

cplx Laurent::coeff(int k) const {
  if (c_.empty() || k < v_) return 0.0;
  if (k - v_ >= terms()) throw std::out_of_range("series coefficient beyond known precision");
  return c_[k - v_];
}

cplx Laurent::constant_term() const {
  if (c_.empty()) return 0.0;
  if (v_ < 0) throw std::domain_error("series has a pole");
  return coeff(0);
}

Laurent Laurent::operator-() const {
  Laurent r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Laurent Laurent::operator+(const Laurent& o) const {
  if (c_.empty()) return o;
  if (o.c_.empty()) return *this;
  const int lo = std::min(v_, o.v_);
  const int hi = std::min(v_ + terms(), o.v_ + o.terms());
  std::vector<cplx> r;
  std::vector<double> scale;
  r.reserve(std::max(0, hi - lo));
  for (int k = lo; k < hi; ++k) {
    cplx a = (k >= v_) ? c_[k - v_] : cplx(0.0);
    cplx b = (k >= o.v_) ? o.c_[k - o.v_] : cplx(0.0);
    r.push_back(a + b);
    scale.push_back(std::abs(a) + std::abs(b));
  }
  // leading terms that cancel to rounding are dropped; precision shrinks accordingly
  std::size_t drop = 0;
  while (drop < r.size() && std::abs(r[drop]) <= cancel_tolerance * scale[drop]) ++drop;
  if (drop == r.size()) return Laurent();
  r.erase(r.begin(), r.begin() + static_cast<long>(drop));
  return Laurent(lo + static_cast<int>(drop), std::move(r));
}

Laurent Laurent::operator-(const Laurent& o) const { return *this + (-o); }

Laurent Laurent::operator*(const Laurent& o) const {
  if (c_.empty() || o.c_.empty()) return Laurent();
  const int n = std::min(terms(), o.terms());
  std::vector<cplx> r(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; i + j < n; ++j) r[i + j] += c_[i] * o.c_[j];
  return Laurent(v_ + o.v_, std::move(r));
}

Laurent Laurent::operator*(cplx c) const {
  if (c == 0.0 || c_.empty()) return Laurent();
  Laurent r = *this;
  for (auto& x : r.c_) x *= c;
  return r;
}

Laurent Laurent::shifted(int dv) const {
  Laurent r = *this;
  if (!r.c_.empty()) r.v_ += dv;
  return r;
}

Laurent Laurent::inverse() const {
  if (c_.empty()) throw std::domain_error("inverse of a zero series");
  const int n = terms();
  std::vector<cplx> r(n, 0.0);
  r[0] = 1.0 / c_[0];
  for (int k = 1; k < n; ++k) {
    cplx s = 0.0;
    for (int i = 1; i <= k; ++i) s += c_[i] * r[k - i];
    r[k] = -s * r[0];
  }
  return Laurent(-v_, std::move(r));
}

Laurent Laurent::operator/(const Laurent& o) const { return *this * o.inverse(); }

Laurent Laurent::sqrt() const {
  if (c_.empty()) return Laurent();
  if (v_ % 2 != 0) throw std::domain_error("square root of a series with odd valuation");
  const int n = terms();
  // sqrt(c0 (1 + g)) = sqrt(c0) h with h^2 = 1 + g
  std::vector<cplx> g(n, 0.0), h(n, 0.0);
  for (int k = 1; k < n; ++k) g[k] = c_[k] / c_[0];
  h[0] = 1.0;
  for (int k = 1; k < n; ++k) {
    cplx s = 0.0;
    for (int i = 1; i < k; ++i) s += h[i] * h[k - i];
    h[k] = (g[k] - s) / 2.0;
  }
  const cplx r0 = std::sqrt(c_[0]);
  for (auto& x : h) x *= r0;
  return Laurent(v_ / 2, std::move(h));
}

Laurent bracket_series(int n, const QPoint& q, int terms) {
  if (n == 0) return Laurent();
  const int nx = (terms + 1) / 2 + 1;
  double sin_a, cos_a;
  bool soft = false;
  if (q.is_root()) {
    const int m = q.order();
    int r = ((n % m) + m) % m;
    if (2 * r > m) r -= m;
    if (r == 0) {
      // n theta0 is a multiple of 2 pi
      sin_a = 0.0;
      cos_a = 1.0;
      soft = true;
    } else {
      sin_a = std::sin(2.0 * std::numbers::pi * r / m);
      cos_a = std::cos(2.0 * std::numbers::pi * r / m);
    }
  } else {
    sin_a = std::sin(n * q.angle());
    cos_a = std::cos(n * q.angle());
  }
  const double th = q.angle();
  // Taylor coefficients in x of sin(n (th + x)) and sin(th + x)
  std::vector<cplx> num(nx), den(nx);
  double fn = 1.0, fd = 1.0;
  for (int k = 0; k < nx; ++k) {
    const double sa = (k % 4 == 0) ? sin_a : (k % 4 == 1) ? cos_a : (k % 4 == 2) ? -sin_a : -cos_a;
    const double sb = (k % 4 == 0) ? std::sin(th) : (k % 4 == 1) ? std::cos(th) : (k % 4 == 2) ? -std::sin(th)
                                                                                                : -std::cos(th);
    num[k] = sa * fn;
    den[k] = sb * fd;
    fn *= static_cast<double>(n) / (k + 1);
    fd *= 1.0 / (k + 1);
  }
  if (soft) num[0] = 0.0;
  // divide in x, then spread onto even powers of s
  std::vector<cplx> inv(nx, 0.0), quo(nx, 0.0);
  inv[0] = 1.0 / den[0];
  for (int k = 1; k < nx; ++k) {
    cplx s = 0.0;
    for (int i = 1; i <= k; ++i) s += den[i] * inv[k - i];
    inv[k] = -s * inv[0];
  }
  for (int i = 0; i < nx; ++i)
    for (int j = 0; i + j < nx; ++j) quo[i + j] += num[i] * inv[j];
  int start = soft ? 1 : 0;
  std::vector<cplx> cs(terms, 0.0);
  for (int k = start; k < nx && 2 * (k - start) < terms; ++k) cs[2 * (k - start)] = quo[k];
  return Laurent::from_coefficients(2 * start, std::move(cs));
}

}  // namespace gz
