#pragma once

#include <complex>
#include <vector>

#include "gzroots/qarith.hpp"

namespace gz {

// Truncated Laurent series in s, where the deformation parameter is
// theta = theta0 + s^2. Stores the coefficients of s^v, ..., s^(v+len-1);
// higher terms are unknown. An empty series is zero (to known precision).
class Laurent {
public:
  static constexpr int default_terms = 24;

  Laurent() = default;
  static Laurent constant(cplx c, int terms = default_terms);
  static Laurent monomial(cplx c, int v, int terms = default_terms);
  // leading exact zeros are stripped
  static Laurent from_coefficients(int v, std::vector<cplx> c);

  bool is_zero() const { return c_.empty(); }
  int valuation() const { return v_; }
  int terms() const { return static_cast<int>(c_.size()); }
  cplx leading() const { return c_.empty() ? cplx(0.0) : c_[0]; }
  // coefficient of s^k; zero below the valuation
  cplx coeff(int k) const;
  // value of the s^0 term, requiring valuation >= 0
  cplx constant_term() const;

  Laurent operator-() const;
  Laurent operator+(const Laurent& o) const;
  Laurent operator-(const Laurent& o) const;
  Laurent operator*(const Laurent& o) const;
  Laurent operator/(const Laurent& o) const;
  Laurent operator*(cplx c) const;
  Laurent shifted(int dv) const;
  Laurent inverse() const;
  Laurent sqrt() const;

  static double cancel_tolerance;

private:
  Laurent(int v, std::vector<cplx> c);
  int v_ = 0;
  std::vector<cplx> c_;
};

// [n] as a series around the base angle of q. At a root of unity a soft zero
// (n = 0 mod m, n != 0) has valuation exactly 2; n = 0 gives the zero series.
Laurent bracket_series(int n, const QPoint& q, int terms = Laurent::default_terms);

}  // namespace gz
