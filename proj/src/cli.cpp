#include "gzroots/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "gzroots/atypical.hpp"
#include "gzroots/errors.hpp"

namespace gz {

namespace {

int parse_int(std::string_view s, const std::string& what) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  int v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw Error(ErrorKind::InvalidArgument, "cannot read an integer from '" + std::string(s) + "' in " + what);
  return v;
}

json build_report(const GeneratorSet& g, const AtypicalBuild* atyp) {
  json r;
  r["dim"] = g.dim();
  if (!atyp) return r;
  json flavors = json::array();
  for (const auto& s : atyp->states) flavors.push_back(s.flavor == Flavor::modified ? "modified" : "primitive");
  r["flavors"] = flavors;
  r["delegated_flat"] = atyp->delegated_flat;
  if (atyp->delegated_flat) return r;
  r["lattice_iterations"] = atyp->iterations;
  r["gauge_search"] = false;
  json comp = json::array();
  for (std::size_t a = 0; a < atyp->composition.size(); ++a) {
    const auto& c = atyp->composition[a];
    if (!c.modified) continue;
    json parts = json::array();
    for (const auto& x : c.components)
      parts.push_back({{"state", x.coordinate}, {"valuation", x.valuation}, {"re", x.leading.real()},
                       {"im", x.leading.imag()}});
    comp.push_back({{"state", a}, {"valuation", c.valuation}, {"components", parts}});
  }
  r["composition"] = comp;
  json orbits = json::array();
  for (const auto& o : atyp->orbits) orbits.push_back({{"level", o.l}, {"members", o.members}});
  r["orbits"] = orbits;
  return r;
}

void print_report(std::ostream& out, const VerificationReport& r) {
  for (const auto& [name, v] : r.residuals) out << "  " << name << " = " << v << "\n";
}

bool root_check(const GeneratorSet& g, double tol, std::ostream& out, json& report) {
  if (!g.q.is_root()) return true;
  VerificationReport u = check_root_of_unity_constraints(g, UnityOrder(g.q.order()), tol);
  out << "root of unity constraints (tol " << tol << "):\n";
  print_report(out, u);
  report["root_constraints"] = report_to_json(u);
  return u.passed;
}

std::vector<int> sorted_dims(const ModuleAnalysis& a) {
  std::vector<int> d;
  for (const auto& c : a.components) d.push_back(c.dim);
  std::sort(d.begin(), d.end());
  return d;
}

void print_analysis(std::ostream& out, const ModuleAnalysis& a, double rank_tol) {
  out << "singular vectors: " << a.singular_vectors.size() << "\n";
  for (const auto& c : a.components)
    out << "  closure of dimension " << c.dim
        << (c.no_proper_subspace ? ": no proper invariant subspace found at tol " : ": reducible at tol ") << rank_tol
        << "\n";
  out << "closures form a direct sum: " << (a.direct_sum ? "yes" : "no") << "\n";
}

json analysis_json(const ModuleAnalysis& a) {
  json comps = json::array();
  for (const auto& c : a.components)
    comps.push_back({{"dim", c.dim}, {"kernel_dim", c.kernel_dim}, {"no_proper_subspace", c.no_proper_subspace}});
  return {{"singular_vectors", a.singular_vectors.size()}, {"components", comps}, {"direct_sum", a.direct_sum}};
}

bool column_empty(const SparseMatrix& s, int col) {
  for (const auto& t : s.entries())
    if (t.col == col && t.value != 0.0) return false;
  return true;
}

bool row_empty(const SparseMatrix& s, int row) {
  for (const auto& t : s.entries())
    if (t.row == row && t.value != 0.0) return false;
  return true;
}

}  // namespace

double effective_tolerance(const RunConfig& c) {
  if (c.tol) return *c.tol;
  if (const char* env = std::getenv("GZROOTS_TOL")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0))
      throw Error(ErrorKind::InvalidArgument, std::string("GZROOTS_TOL is not a positive number: ") + env);
    return v;
  }
  return default_relation_tol;
}

TopRow parse_top(const std::string& text, std::optional<int> rank) {
  if (text.empty()) throw Error(ErrorKind::InvalidArgument, "--top is required");
  std::vector<int> v;
  std::string_view rest = text;
  while (true) {
    auto pos = rest.find(',');
    v.push_back(parse_int(rest.substr(0, pos), "--top"));
    if (pos == std::string_view::npos) break;
    rest.remove_prefix(pos + 1);
  }
  if (rank) {
    if (*rank < 2) throw Error(ErrorKind::InvalidArgument, "--rank must be at least 2");
    if (static_cast<int>(v.size()) == *rank - 1) v.push_back(0);
    if (static_cast<int>(v.size()) != *rank)
      throw Error(ErrorKind::InvalidArgument, "--top has " + std::to_string(v.size()) + " values for rank " +
                                                  std::to_string(*rank));
  }
  if (v.size() < 2) throw Error(ErrorKind::InvalidArgument, "--top needs at least two values");
  return TopRow(std::move(v));
}

std::string resolved_convention(const RunConfig& c, const TopRow& top) {
  std::string conv = c.convention;
  if (conv.empty()) {
    if (!c.m) return "generic";
    conv = (top.values.front() - top.values.back() == *c.m + 1) ? "flat" : "atypical";
  }
  if (conv != "generic" && conv != "flat" && conv != "atypical")
    throw Error(ErrorKind::InvalidArgument, "unknown convention '" + conv + "'");
  if (conv != "generic" && !c.m) throw Error(ErrorKind::InvalidArgument, "--convention " + conv + " needs --m");
  return conv;
}

Document build_document(const RunConfig& c) {
  const TopRow top = parse_top(c.top, c.rank);
  const std::string conv = resolved_convention(c, top);
  Document doc;
  if (conv == "generic") {
    const QPoint q = c.m ? QPoint::root(UnityOrder(*c.m)) : QPoint::generic(c.generic_angle);
    doc.rep = build_generic_rep(top, q);
    doc.report = build_report(doc.rep, nullptr);
  } else if (conv == "flat") {
    doc.rep = build_flat_sl3(top, UnityOrder(*c.m));
    doc.report = build_report(doc.rep, nullptr);
  } else {
    AtypicalBuild b = build_atypical_sl3_detailed(top, UnityOrder(*c.m));
    doc.rep = std::move(b.rep);
    doc.report = build_report(doc.rep, &b);
  }
  return doc;
}

ScenarioOutcome run_paper_case(const std::string& name, double rank_tol, std::ostream& out) {
  ScenarioOutcome res;
  json& rep = res.report;
  rep["scenario"] = name;
  GeneratorSet g;
  double tol = 1e-8;
  bool ok = true;
  auto check = [&](const std::string& what, bool pass) {
    out << (pass ? "  ok    " : "  FAIL  ") << what << "\n";
    rep["checks"][what] = pass;
    ok = ok && pass;
  };

  if (name == "flat-7") {
    tol = 1e-9;
    g = build_flat_sl3(TopRow({4, 2, 0}), UnityOrder(3));
  } else if (name == "flat-18") {
    g = build_flat_sl3(TopRow({6, 2, 0}), UnityOrder(5));
  } else if (name == "atypical-15") {
    g = build_atypical_sl3(TopRow({5, 2, 0}), UnityOrder(3));
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown scenario '" + name + "' (flat-7, flat-18, atypical-15)");
  }
  out << name << ": top " << g.basis.top().str() << ", m = " << g.q.order() << ", convention "
      << convention_name(g.convention) << ", dim " << g.dim() << "\n";

  VerificationReport rel = check_defining_relations(g, tol);
  out << "defining relations (tol " << tol << "):\n";
  print_report(out, rel);
  rep["relations"] = report_to_json(rel);
  const bool roots_ok = root_check(g, tol, out, rep);
  const ModuleAnalysis an = analyze_module(g, rank_tol);
  print_analysis(out, an, rank_tol);
  rep["analysis"] = analysis_json(an);

  check("relations hold", rel.passed);
  check("e^m = f^m = 0 and k^m = 1", roots_ok);
  if (name == "flat-7") {
    check("dimension 8", g.dim() == 8);
    const auto s = g.basis.find(GZPattern({{4, 2, 0}, {3, 2}, {3}}));
    bool killed = s.has_value();
    for (std::size_t l = 0; killed && l < g.e.size(); ++l)
      killed = column_empty(g.e[l], static_cast<int>(*s)) && column_empty(g.f[l], static_cast<int>(*s)) &&
               row_empty(g.e[l], static_cast<int>(*s)) && row_empty(g.f[l], static_cast<int>(*s));
    check("state [[4,2,0],[3,2],[3]] decouples with exact zeros", killed);
    const bool split = sorted_dims(an) == std::vector<int>{1, 7} && an.direct_sum &&
                       std::all_of(an.components.begin(), an.components.end(),
                                   [](const ComponentInfo& c) { return c.no_proper_subspace; });
    check("module splits as 7 + 1", split);
  } else if (name == "flat-18") {
    check("dimension 24", g.dim() == 24);
    const DenseGenerators d = to_dense(g);
    Eigen::VectorXcd hw = Eigen::VectorXcd::Zero(g.dim());
    hw[static_cast<Eigen::Index>(*g.basis.find(highest_weight_pattern(g.basis.top())))] = 1.0;
    const int closure = static_cast<int>(invariant_closure(d, hw, rank_tol).cols());
    out << "closure of the highest-weight vector: " << closure << "\n";
    rep["highest_weight_closure"] = closure;
    check("highest-weight closure has dimension 18", closure == 18);
  } else {
    check("15 basis states", g.dim() == 15 && g.basis.size() == enumerate_basis(g.basis.top()).size());
    bool finite = true;
    for (const auto* set : {&g.e, &g.f})
      for (const auto& s : *set)
        for (const auto& t : s.entries()) finite = finite && std::isfinite(t.value.real()) && std::isfinite(t.value.imag());
    check("all coefficients finite", finite);
    check("one singular vector generating all 15 states",
          an.singular_vectors.size() == 1 && sorted_dims(an) == std::vector<int>{15});
  }
  out << (ok ? "PASS" : "FAIL") << "\n";
  res.ok = ok;
  rep["passed"] = ok;
  return res;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gelfand-Zetlin representations of U_q(sl(N)), including roots of unity", "gzroots"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string scenario;

  auto add_build_flags = [&](CLI::App* sub) {
    sub->add_option("--top", cfg.top, "top row, comma separated, highest first");
    sub->add_option("--rank", cfg.rank, "N; with N-1 values in --top, p_NN = 0 is appended");
    sub->add_option("--m", cfg.m, "order of the root of unity (odd, >= 3)");
    sub->add_option("--generic-angle", cfg.generic_angle, "q = exp(i angle) when no --m is given");
    sub->add_option("--convention", cfg.convention, "generic | flat | atypical");
  };
  auto* dim = app.add_subcommand("dim", "print the generic dimension");
  dim->add_option("--top", cfg.top)->required();
  dim->add_option("--rank", cfg.rank);
  auto* enumerate = app.add_subcommand("enumerate", "list the basis patterns");
  enumerate->add_option("--top", cfg.top)->required();
  enumerate->add_option("--rank", cfg.rank);
  enumerate->add_flag("--weights", cfg.weights, "print Cartan-exponent multiplicities instead");
  auto* build = app.add_subcommand("build", "construct a representation and write it out");
  add_build_flags(build);
  build->add_option("--out", cfg.out, "output file (stdout if omitted)");
  build->add_option("--format", cfg.format, "json | csv");
  auto* verify = app.add_subcommand("verify", "check the defining relations");
  add_build_flags(verify);
  verify->add_option("--in", cfg.in, "representation file written by build");
  verify->add_option("--tol", cfg.tol, "relation tolerance");
  verify->add_option("--rank-tol", cfg.rank_tol, "rank tolerance for nullspaces and closures");
  verify->add_option("--out", cfg.out, "write the report as json");
  auto* paper = app.add_subcommand("paper-case", "run a named worked example");
  paper->add_option("name", scenario, "flat-7 | flat-18 | atypical-15")->required();
  paper->add_option("--rank-tol", cfg.rank_tol);
  paper->add_option("--out", cfg.out, "write the report as json");
  auto* exp = app.add_subcommand("export", "convert a representation file");
  exp->add_option("--in", cfg.in)->required();
  std::string export_format = "csv";
  exp->add_option("--format", export_format, "csv | json");
  exp->add_option("--out", cfg.out);

  std::vector<const char*> argv{"gzroots"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_config;
  }

  auto emit = [&](const std::string& text) {
    if (cfg.out.empty()) out << text;
    else write_file(cfg.out, text);
  };

  try {
    if (*dim) {
      out << generic_dimension(parse_top(cfg.top, cfg.rank)) << "\n";
      return exit_ok;
    }
    if (*enumerate) {
      const ModuleBasis b = enumerate_basis(parse_top(cfg.top, cfg.rank));
      if (!cfg.weights) {
        for (const auto& p : b.states()) out << p.str() << "\n";
        return exit_ok;
      }
      std::map<std::vector<int>, int> mult;
      for (const auto& p : b.states()) {
        std::vector<int> w;
        for (int l = 1; l < p.rank(); ++l) w.push_back(cartan_exponent(p, l));
        ++mult[w];
      }
      for (int l = 1; l < b.top().rank(); ++l) out << 'k' << l << '\t';
      out << "mult\n";
      for (const auto& [w, n] : mult) {
        for (int x : w) out << x << '\t';
        out << n << "\n";
      }
      return exit_ok;
    }
    if (*build) {
      if (cfg.format != "json" && cfg.format != "csv")
        throw Error(ErrorKind::InvalidArgument, "unknown format '" + cfg.format + "'");
      const Document doc = build_document(cfg);
      emit(cfg.format == "json" ? serialize(doc) : to_csv(doc.rep));
      return exit_ok;
    }
    if (*verify) {
      const double tol = effective_tolerance(cfg);
      Document doc = cfg.in.empty() ? build_document(cfg) : parse_document(read_file(cfg.in));
      const GeneratorSet& g = doc.rep;
      out << "sl(" << g.rank() << ") top " << g.basis.top().str() << ", dim " << g.dim() << ", convention "
          << convention_name(g.convention) << "\n";
      json rep;
      VerificationReport rel = check_defining_relations(g, tol);
      out << "defining relations (tol " << tol << "):\n";
      print_report(out, rel);
      rep["relations"] = report_to_json(rel);
      const bool roots_ok = root_check(g, tol, out, rep);
      const ModuleAnalysis an = analyze_module(g, cfg.rank_tol);
      print_analysis(out, an, cfg.rank_tol);
      rep["analysis"] = analysis_json(an);
      const bool ok = rel.passed && roots_ok;
      rep["passed"] = ok;
      out << (ok ? "passed" : "FAILED") << "\n";
      if (!cfg.out.empty()) write_file(cfg.out, rep.dump(1) + "\n");
      return ok ? exit_ok : exit_failed;
    }
    if (*paper) {
      ScenarioOutcome r = run_paper_case(scenario, cfg.rank_tol, out);
      if (!cfg.out.empty()) write_file(cfg.out, r.report.dump(1) + "\n");
      return r.ok ? exit_ok : exit_failed;
    }
    if (*exp) {
      const Document doc = parse_document(read_file(cfg.in));
      if (export_format == "csv") emit(to_csv(doc.rep));
      else if (export_format == "json") emit(serialize(doc));
      else throw Error(ErrorKind::InvalidArgument, "unknown format '" + export_format + "'");
      return exit_ok;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (e.kind() == ErrorKind::UnresolvedDivergence || e.kind() == ErrorKind::DivergentElement) return exit_divergence;
    return exit_config;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_config;
  }
  return exit_config;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace gz
