#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gzroots/series.hpp"

using namespace gz;

namespace {

cplx eval(const Laurent& x, double s) {
  if (x.is_zero()) return 0.0;
  cplx acc = 0.0;
  for (int k = 0; k < x.terms(); ++k) acc += x.coeff(x.valuation() + k) * std::pow(s, x.valuation() + k);
  return acc;
}

}  // namespace

TEST_SUITE("series") {
  TEST_CASE("arithmetic on truncated series") {
    const int n = 12;
    Laurent one = Laurent::constant(1.0, n);
    Laurent s = Laurent::monomial(1.0, 1, n);
    Laurent a = one + s;                    // 1 + s
    Laurent inv = a.inverse();              // 1 - s + s^2 - ...
    for (int k = 0; k < n; ++k) CHECK(std::abs(inv.coeff(k) - (k % 2 ? -1.0 : 1.0)) < 1e-14);
    Laurent back = a * inv;
    CHECK(std::abs(back.coeff(0) - 1.0) < 1e-14);
    for (int k = 1; k < back.terms(); ++k) CHECK(std::abs(back.coeff(k)) < 1e-14);
    CHECK((a - a).is_zero());
    CHECK(s.shifted(-3).valuation() == -2);
    CHECK((s * s).valuation() == 2);
    CHECK((one / s).valuation() == -1);
  }

  TEST_CASE("square roots") {
    const int n = 16;
    Laurent x = Laurent::monomial(4.0, 2, n) + Laurent::monomial(1.0, 3, n);  // 4 s^2 + s^3
    Laurent r = x.sqrt();
    CHECK(r.valuation() == 1);
    Laurent sq = r * r;
    for (int k = 2; k < 2 + sq.terms(); ++k) CHECK(std::abs(sq.coeff(k) - x.coeff(k)) < 1e-13);
    CHECK_THROWS(Laurent::monomial(1.0, 1, n).sqrt());
    // principal root of a negative leading coefficient
    CHECK(std::abs(Laurent::constant(-9.0, n).sqrt().leading() - cplx(0.0, 3.0)) < 1e-15);
  }

  TEST_CASE("brackets along theta = theta0 + s^2") {
    for (int m : {3, 5}) {
      const QPoint q = QPoint::root(UnityOrder(m));
      const double th0 = 2.0 * std::numbers::pi / m;
      for (int n = -2 * m; n <= 2 * m; ++n) {
        Laurent b = bracket_series(n, q, 24);
        if (n == 0) {
          CHECK(b.is_zero());
          continue;
        }
        CHECK(b.valuation() == (n % m == 0 ? 2 : 0));
        for (double s : {0.05, 0.1, 0.2}) {
          const double th = th0 + s * s;
          const double want = std::sin(n * th) / std::sin(th);
          CHECK(std::abs(eval(b, s) - want) < 1e-10);
        }
        if (n % m == 0) CHECK(std::abs(b.leading() - n * std::cos(n * th0) / 1.0 / std::sin(th0)) < 1e-12);
      }
    }
  }

  TEST_CASE("brackets at generic q are the plain value at s = 0") {
    const QPoint q = QPoint::generic(0.37);
    for (int n : {-5, 1, 2, 7}) CHECK(std::abs(bracket_series(n, q, 8).constant_term() - q_bracket(n, q).value) < 1e-14);
  }

  TEST_CASE("constant term of a pole is refused") {
    CHECK_THROWS(Laurent::monomial(1.0, -2, 4).constant_term());
    CHECK(Laurent().constant_term() == cplx(0.0));
  }
}
