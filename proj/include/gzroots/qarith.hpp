#pragma once

#include <complex>
#include <span>
#include <vector>

namespace gz {

using cplx = std::complex<double>;

// Order of the root of unity. Only odd m >= 3 is supported.
struct UnityOrder {
  explicit UnityOrder(int m);
  int m;
};

class QPoint {
public:
  enum class Kind { root_of_unity, generic };

  static QPoint root(UnityOrder m);
  static QPoint generic(double angle, int n_max = 64);
  // Keeps the given value bit for bit (used when reading files back).
  static QPoint generic_from_value(cplx value, int n_max = 64);

  Kind kind() const { return kind_; }
  bool is_root() const { return kind_ == Kind::root_of_unity; }
  int order() const { return order_; }
  cplx value() const { return value_; }
  double angle() const { return angle_; }

  // q^n; at a root of unity the exponent is reduced mod m first so q^(km) is exactly 1.
  cplx power(int n) const;

private:
  QPoint(Kind kind, cplx value, double angle, int order);
  Kind kind_;
  cplx value_;
  double angle_;
  int order_;
};

QPoint q_from_order(UnityOrder m);

struct BracketValue {
  int n = 0;
  double value = 0.0;
  bool exactly_zero = false;
};

BracketValue q_bracket(int n, const QPoint& q);

int bracket_periodicity(int n, UnityOrder m);

int epsilon(int i, int j);

cplx principal_sqrt(double x);

// Principal root of each factor, multiplied. Exactly 0 if any factor is exactly zero.
cplx sqrt_signed_product(std::span<const BracketValue> factors);

// Running product of bracket factors where zero factors are counted instead of
// multiplied. A zero factor [n] behaves like n * (q-angle offset) near the root,
// so it contributes its argument n to the finite part.
struct FactorProduct {
  double product = 1.0;
  cplx root = 1.0;
  int zeros = 0;
  bool hard_zero = false;

  void include(const BracketValue& b);
};

struct TermValue {
  bool zero = false;
  bool divergent = false;
  int order = 0;
  cplx value = 0.0;
};

// sqrt(num) / sqrt(den) * lin, with zeros cancelled by counting.
TermValue combine_factors(const FactorProduct& num, const FactorProduct& den,
                          const FactorProduct& lin = FactorProduct{});

}  // namespace gz
