#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gzroots/errors.hpp"
#include "gzroots/limit.hpp"
#include "gzroots/verify.hpp"

using namespace gz;

namespace {

using Mat = Eigen::MatrixXcd;

// traces of generator words do not depend on the basis
std::vector<cplx> word_traces(const GeneratorSet& g) {
  DenseGenerators d = to_dense(g);
  const Mat& e1 = d.e[0];
  const Mat& e2 = d.e[1];
  const Mat& f1 = d.f[0];
  const Mat& f2 = d.f[1];
  std::vector<Mat> words{e1 * f1,           e2 * f2,           f1 * e1 * f2 * e2,     e1 * e2 * f2 * f1,
                         e2 * e1 * f1 * f2, f2 * e1 * f1 * e2, e1 * e2 * f1 * f2,     d.k[0] * e1 * f1,
                         e1 * f1 * e1 * f1, e2 * f2 * e1 * f1, e1 * e1 * e2 * f2 * f1 * f1};
  std::vector<cplx> out;
  for (const auto& w : words) out.push_back(w.trace());
  return out;
}

}  // namespace

TEST_SUITE("limit") {
  TEST_CASE("at generic q the limit is the generic representation") {
    const QPoint q = QPoint::generic(0.37);
    for (const auto& top : std::vector<std::vector<int>>{{4, 2, 0}, {5, 2, 0}, {4, 2, 1, 0}}) {
      LimitBuild lb = build_limit_rep(TopRow(top), q);
      GeneratorSet g = build_generic_rep(TopRow(top), q);
      CHECK(lb.rep.basis.states() == g.basis.states());
      for (const auto& s : lb.states) CHECK_FALSE(s.modified);
      for (std::size_t l = 0; l < g.f.size(); ++l)
        for (int r = 0; r < g.dim(); ++r)
          for (int c = 0; c < g.dim(); ++c) {
            CHECK(std::abs(lb.rep.f[l].at(r, c) - g.f[l].at(r, c)) < 1e-12);
            CHECK(std::abs(lb.rep.e[l].at(r, c) - g.e[l].at(r, c)) < 1e-12);
          }
    }
  }

  TEST_CASE("word traces approach the root-of-unity limit") {
    struct Case {
      std::vector<int> top;
      int m;
    };
    for (const Case& c : {Case{{5, 2, 0}, 3}, Case{{6, 2, 0}, 3}, Case{{7, 3, 0}, 5}}) {
      const QPoint root = QPoint::root(UnityOrder(c.m));
      LimitBuild lb = build_limit_rep(TopRow(c.top), root);
      const double th0 = 2.0 * std::numbers::pi / c.m;
      const auto lim = word_traces(lb.rep);
      const auto near1 = word_traces(build_generic_rep(TopRow(c.top), QPoint::generic(th0 + 1e-6)));
      const auto near2 = word_traces(build_generic_rep(TopRow(c.top), QPoint::generic(th0 + 2e-6)));
      for (std::size_t i = 0; i < lim.size(); ++i) {
        // linear extrapolation to the root removes the O(delta) term
        const cplx extrapolated = 2.0 * near1[i] - near2[i];
        CHECK(std::abs(lim[i] - extrapolated) < 1e-5 * (1.0 + std::abs(lim[i])));
      }
    }
  }

  TEST_CASE("(5,2,0) at m = 3") {
    LimitBuild lb = build_limit_rep(TopRow({5, 2, 0}), QPoint::root(UnityOrder(3)));
    CHECK(lb.rep.dim() == 15);
    CHECK(lb.rep.basis.states() == enumerate_basis(TopRow({5, 2, 0})).states());
    CHECK(lb.rep.convention == Convention::modified_sl3);
    int modified = 0;
    for (std::size_t a = 0; a < lb.states.size(); ++a) {
      CHECK(lb.states[a].pivot == static_cast<int>(a));
      if (lb.states[a].modified) ++modified;
    }
    CHECK(modified > 0);
    CHECK(lb.precision >= 4);
    CHECK(check_defining_relations(lb.rep, 1e-10).passed);
  }

  TEST_CASE("series length does not change the result") {
    const QPoint root = QPoint::root(UnityOrder(3));
    LimitOptions a, b;
    a.terms = 24;
    b.terms = 48;
    LimitBuild x = build_limit_rep(TopRow({6, 2, 0}), root, a);
    LimitBuild y = build_limit_rep(TopRow({6, 2, 0}), root, b);
    for (std::size_t l = 0; l < 2; ++l)
      for (int r = 0; r < x.rep.dim(); ++r)
        for (int c = 0; c < x.rep.dim(); ++c) {
          CHECK(std::abs(x.rep.f[l].at(r, c) - y.rep.f[l].at(r, c)) < 1e-9);
          CHECK(std::abs(x.rep.e[l].at(r, c) - y.rep.e[l].at(r, c)) < 1e-9);
        }
  }

  TEST_CASE("too few saturation rounds is reported") {
    LimitOptions o;
    o.max_iterations = 1;
    try {
      build_limit_rep(TopRow({5, 2, 0}), QPoint::root(UnityOrder(3)), o);
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnresolvedDivergence);
    }
  }
}
