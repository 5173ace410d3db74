// Serial vs OpenMP timings for generator assembly and relation residuals.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gzroots/genrep.hpp"
#include "gzroots/verify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace gz;

namespace {

double best_ms(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

bool same(const GeneratorSet& a, const GeneratorSet& b) {
  for (std::size_t l = 0; l < a.e.size(); ++l) {
    const auto &x = a.e[l].entries(), &y = b.e[l].entries();
    const auto &u = a.f[l].entries(), &v = b.f[l].entries();
    if (x.size() != y.size() || u.size() != v.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i].row != y[i].row || x[i].col != y[i].col || x[i].value != y[i].value) return false;
    for (std::size_t i = 0; i < u.size(); ++i)
      if (u[i].row != v[i].row || u[i].col != v[i].col || u[i].value != v[i].value) return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"benchmark serial and parallel kernels", "bench_kernels"};
  int reps = 3;
  std::vector<std::string> tops{"9,6,3,0", "8,5,3,1,0", "10,6,3,1,0", "7,5,4,2,1,0"};
  app.add_option("--reps", reps);
  app.add_option("--top", tops, "top rows, e.g. 9,6,3,0")->delimiter(';');
  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; parallel runs serially\n");
#endif
  std::printf("%-16s %6s %12s %12s %12s %12s %6s\n", "top", "dim", "build ser", "build par", "verify ser",
              "verify par", "same");
  const QPoint q = QPoint::generic(0.37);
  for (const auto& s : tops) {
    std::vector<int> v;
    std::size_t pos = 0;
    while (pos <= s.size()) {
      auto next = s.find(',', pos);
      v.push_back(std::stoi(s.substr(pos, next - pos)));
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    const TopRow top(v);
    GeneratorSet ser, par;
    const double bs = best_ms(reps, [&] { ser = build_generic_rep(top, q, ExecPolicy::serial); });
    const double bp = best_ms(reps, [&] { par = build_generic_rep(top, q, ExecPolicy::parallel); });
    double vs = -1, vp = -1;
    bool agree = same(ser, par);
    if (ser.dim() <= max_dense_dim) {
      VerificationReport rs, rp;
      vs = best_ms(reps, [&] { rs = check_defining_relations(ser, 1e-9, ExecPolicy::serial); });
      vp = best_ms(reps, [&] { rp = check_defining_relations(ser, 1e-9, ExecPolicy::parallel); });
      agree = agree && rs.residuals == rp.residuals;
    }
    auto cell = [](double ms) {
      char buf[32];
      if (ms < 0) return std::string("too large");
      std::snprintf(buf, sizeof buf, "%.2fms", ms);
      return std::string(buf);
    };
    std::printf("%-16s %6d %12s %12s %12s %12s %6s\n", s.c_str(), ser.dim(), cell(bs).c_str(), cell(bp).c_str(),
                cell(vs).c_str(), cell(vp).c_str(), agree ? "yes" : "NO");
  }
  return 0;
}
