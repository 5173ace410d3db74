#include "gzroots/qarith.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gzroots/errors.hpp"

namespace gz {

UnityOrder::UnityOrder(int m_) : m(m_) {
  if (m_ < 3) throw Error(ErrorKind::InvalidOrder, "root of unity order must be >= 3, got " + std::to_string(m_));
  if (m_ % 2 == 0)
    throw Error(ErrorKind::EvenOrderUnsupported,
                "even order m=" + std::to_string(m_) + " is not supported (only odd m is treated)");
}

QPoint::QPoint(Kind kind, cplx value, double angle, int order)
    : kind_(kind), value_(value), angle_(angle), order_(order) {}

QPoint QPoint::root(UnityOrder m) {
  double th = 2.0 * std::numbers::pi / m.m;
  return QPoint(Kind::root_of_unity, {std::cos(th), std::sin(th)}, th, m.m);
}

static void check_generic(double angle, int n_max) {
  for (int n = 1; n <= n_max; ++n) {
    double turns = n * angle / (2.0 * std::numbers::pi);
    if (std::abs(turns - std::round(turns)) < 1e-9)
      throw Error(ErrorKind::InvalidArgument,
                  "angle " + std::to_string(angle) + " gives q^" + std::to_string(n) + " = 1; not generic");
  }
}

QPoint QPoint::generic(double angle, int n_max) {
  check_generic(angle, n_max);
  return QPoint(Kind::generic, std::polar(1.0, angle), angle, 0);
}

QPoint QPoint::generic_from_value(cplx value, int n_max) {
  if (std::abs(std::abs(value) - 1.0) > 1e-14)
    throw Error(ErrorKind::InvalidArgument, "q must lie on the unit circle");
  double angle = std::arg(value);
  check_generic(angle, n_max);
  return QPoint(Kind::generic, value, angle, 0);
}

static int mod_pos(int n, int m) {
  int r = n % m;
  return r < 0 ? r + m : r;
}

// residue in (-m/2, m/2], so that -n maps to exactly minus the residue of n
static int mod_sym(int n, int m) {
  int r = mod_pos(n, m);
  if (2 * r > m) r -= m;
  return r;
}

cplx QPoint::power(int n) const {
  if (is_root()) {
    int r = mod_pos(n, order_);
    if (r == 0) return {1.0, 0.0};
    double t = 2.0 * std::numbers::pi * r / order_;
    return {std::cos(t), std::sin(t)};
  }
  return std::polar(1.0, n * angle_);
}

QPoint q_from_order(UnityOrder m) { return QPoint::root(m); }

BracketValue q_bracket(int n, const QPoint& q) {
  BracketValue b;
  b.n = n;
  if (n == 0) {
    b.exactly_zero = true;
    return b;
  }
  if (q.is_root()) {
    int m = q.order();
    int r = mod_sym(n, m);
    if (r == 0) {
      b.exactly_zero = true;
      return b;
    }
    b.value = std::sin(2.0 * std::numbers::pi * r / m) / std::sin(2.0 * std::numbers::pi / m);
    return b;
  }
  // n * angle is split into hi + lo so the rounding of the product does not leak into sin
  const double hi = n * q.angle();
  const double lo = std::fma(static_cast<double>(n), q.angle(), -hi);
  b.value = (std::sin(hi) + lo * std::cos(hi)) / std::sin(q.angle());
  return b;
}

int bracket_periodicity(int n, UnityOrder m) { return mod_pos(n, m.m); }

int epsilon(int i, int j) { return i <= j ? 1 : -1; }

cplx principal_sqrt(double x) {
  if (x >= 0) return {std::sqrt(x), 0.0};
  return {0.0, std::sqrt(-x)};
}

cplx sqrt_signed_product(std::span<const BracketValue> factors) {
  cplx r = 1.0;
  for (const auto& f : factors) {
    if (f.exactly_zero) return 0.0;
    r *= principal_sqrt(f.value);
  }
  return r;
}

void FactorProduct::include(const BracketValue& b) {
  if (b.exactly_zero) {
    ++zeros;
    if (b.n == 0) hard_zero = true;
    else root *= principal_sqrt(static_cast<double>(b.n));
    return;
  }
  product *= b.value;
  root *= principal_sqrt(b.value);
}

TermValue combine_factors(const FactorProduct& num, const FactorProduct& den, const FactorProduct& lin) {
  TermValue t;
  if (num.hard_zero || lin.hard_zero) {
    t.zero = true;
    return t;
  }
  if (den.hard_zero) {
    t.divergent = true;
    t.order = -1;
    return t;
  }
  t.order = num.zeros - den.zeros + 2 * lin.zeros;
  if (t.order > 0) {
    t.zero = true;
    return t;
  }
  if (t.order < 0) {
    t.divergent = true;
    return t;
  }
  // lin.root holds sqrt of each linear factor; square it back
  t.value = num.root / den.root * (lin.root * lin.root);
  return t;
}

}  // namespace gz
