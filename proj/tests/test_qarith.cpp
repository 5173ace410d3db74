#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "gzroots/errors.hpp"
#include "gzroots/qarith.hpp"

using namespace gz;

namespace {

// [n] straight from the geometric sum q^{n-1} + q^{n-3} + ... + q^{1-n}
double bracket_by_sum(int n, double theta) {
  if (n == 0) return 0.0;
  const int s = n > 0 ? 1 : -1;
  const int a = std::abs(n);
  std::complex<double> acc = 0.0;
  for (int k = 0; k < a; ++k) acc += std::polar(1.0, (a - 1 - 2 * k) * theta);
  return s * acc.real();
}

}  // namespace

TEST_SUITE("qarith") {
  TEST_CASE("unity order accepts only odd m >= 3") {
    CHECK_NOTHROW(UnityOrder(3));
    CHECK_NOTHROW(UnityOrder(11));
    try {
      UnityOrder bad(4);
      FAIL("even order accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::EvenOrderUnsupported);
    }
    for (int m : {2, 1, 0, -3}) {
      try {
        UnityOrder bad(m);
        FAIL("order accepted");
      } catch (const Error& e) {
        CHECK((e.kind() == ErrorKind::InvalidOrder || e.kind() == ErrorKind::EvenOrderUnsupported));
      }
    }
  }

  TEST_CASE("brackets match the geometric sum at generic q") {
    const QPoint q = QPoint::generic(0.37);
    for (int n = -25; n <= 25; ++n) CHECK(q_bracket(n, q).value == doctest::Approx(bracket_by_sum(n, 0.37)).epsilon(1e-12));
    CHECK(q_bracket(1, q).value == doctest::Approx(1.0));
    CHECK(q_bracket(2, q).value == doctest::Approx(2.0 * std::cos(0.37)));
  }

  TEST_CASE("brackets at a root of unity") {
    for (int m : {3, 5, 7}) {
      const QPoint q = QPoint::root(UnityOrder(m));
      const double th = 2.0 * std::numbers::pi / m;
      for (int n = -4 * m; n <= 4 * m; ++n) {
        BracketValue b = q_bracket(n, q);
        if (n % m == 0) {
          CHECK(b.exactly_zero);
          CHECK(b.value == 0.0);
        } else {
          CHECK_FALSE(b.exactly_zero);
          CHECK(b.value == doctest::Approx(bracket_by_sum(n, th)).epsilon(1e-11));
        }
        // odd in n, bit for bit
        CHECK(q_bracket(-n, q).value == -b.value);
        // periodic with period m
        CHECK(q_bracket(n + m, q).value == b.value);
      }
    }
    CHECK(q_bracket(0, QPoint::root(UnityOrder(3))).exactly_zero);
  }

  TEST_CASE("generic q rejects low-order roots") {
    CHECK_THROWS_AS(QPoint::generic(2.0 * std::numbers::pi / 5.0), Error);
    CHECK_THROWS_AS(QPoint::generic(0.0), Error);
    CHECK_NOTHROW(QPoint::generic(0.37));
    CHECK_THROWS_AS(QPoint::generic_from_value({2.0, 0.0}), Error);
  }

  TEST_CASE("powers at a root are exact for multiples of m") {
    const QPoint q = QPoint::root(UnityOrder(5));
    for (int k = -6; k <= 6; ++k) CHECK(q.power(5 * k) == cplx(1.0, 0.0));
    CHECK(std::abs(q.power(1) - q.value()) < 1e-15);
    CHECK(std::abs(q.power(7) - q.power(2)) == 0.0);
    const QPoint g = QPoint::generic(0.37);
    CHECK(std::abs(g.power(3) - std::polar(1.0, 1.11)) < 1e-14);
  }

  TEST_CASE("periodicity and sign helpers") {
    CHECK(bracket_periodicity(7, UnityOrder(3)) == 1);
    CHECK(bracket_periodicity(-1, UnityOrder(3)) == 2);
    CHECK(bracket_periodicity(9, UnityOrder(3)) == 0);
    CHECK(epsilon(1, 2) == 1);
    CHECK(epsilon(2, 2) == 1);
    CHECK(epsilon(3, 2) == -1);
  }

  TEST_CASE("principal square roots of signed factors") {
    CHECK(principal_sqrt(4.0) == cplx(2.0, 0.0));
    CHECK(principal_sqrt(-9.0) == cplx(0.0, 3.0));
    std::vector<BracketValue> fs{{2, -4.0, false}, {3, -1.0, false}};
    // per-factor roots: i*2 * i*1 = -2, not sqrt(4) = 2
    CHECK(sqrt_signed_product(fs) == cplx(-2.0, 0.0));
    fs.push_back({3, 0.0, true});
    CHECK(sqrt_signed_product(fs) == cplx(0.0, 0.0));
  }

  TEST_CASE("zero counting in factor products") {
    const QPoint q = QPoint::root(UnityOrder(3));
    FactorProduct num, den, lin;
    num.include(q_bracket(3, q));
    num.include(q_bracket(2, q));
    den.include(q_bracket(6, q));
    TermValue t = combine_factors(num, den);
    CHECK_FALSE(t.zero);
    CHECK_FALSE(t.divergent);
    CHECK(t.order == 0);
    // [3]/[6] -> 3/6 near the root
    CHECK(std::abs(t.value - std::sqrt(3.0 / 6.0) * principal_sqrt(q_bracket(2, q).value)) < 1e-14);

    FactorProduct d2;
    d2.include(q_bracket(3, q));
    d2.include(q_bracket(3, q));
    CHECK(combine_factors(num, d2).divergent);

    FactorProduct hard;
    hard.include(q_bracket(0, q));
    CHECK(combine_factors(hard, d2).zero);
    CHECK(combine_factors(FactorProduct{}, hard).divergent);

    // a zero linear factor counts twice
    lin.include(q_bracket(3, q));
    TermValue u = combine_factors(FactorProduct{}, d2, lin);
    CHECK(u.order == 0);
    CHECK(std::abs(u.value - 3.0 / 3.0) < 1e-14);
    FactorProduct one;
    one.include(q_bracket(3, q));
    CHECK(combine_factors(one, FactorProduct{}).zero);
  }
}
