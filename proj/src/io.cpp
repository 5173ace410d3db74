#include "gzroots/io.hpp"

#include <fstream>
#include <sstream>

#include "gzroots/errors.hpp"

namespace gz {

namespace {

json triplets(const SparseMatrix& s) {
  json out = json::array();
  for (const auto& t : s.entries()) out.push_back({t.row, t.col, t.value.real(), t.value.imag()});
  return out;
}

SparseMatrix read_triplets(const json& j, int n, const std::string& name) {
  if (!j.is_array()) throw Error(ErrorKind::Format, "generator " + name + " must be an array of triplets");
  std::vector<Triplet> entries;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 4 || !t[0].is_number_integer() || !t[1].is_number_integer() ||
        !t[2].is_number() || !t[3].is_number())
      throw Error(ErrorKind::Format, "bad entry in " + name + ": " + t.dump());
    entries.push_back({t[0].get<int>(), t[1].get<int>(), cplx(t[2].get<double>(), t[3].get<double>())});
  }
  try {
    return SparseMatrix(n, std::move(entries));
  } catch (const std::exception& e) {
    throw Error(ErrorKind::Format, name + ": " + e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::Format, std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

json to_json(const Document& doc) {
  const GeneratorSet& g = doc.rep;
  json j;
  j["algebra"] = "sl(" + std::to_string(g.rank()) + ")";
  json q;
  q["kind"] = g.q.is_root() ? "root" : "generic";
  q["m"] = g.q.is_root() ? json(g.q.order()) : json(nullptr);
  q["re"] = g.q.value().real();
  q["im"] = g.q.value().imag();
  j["q"] = q;
  j["convention"] = convention_name(g.convention);
  json basis = json::array();
  for (const auto& p : g.basis.states()) basis.push_back(p.rows());
  j["basis"] = basis;
  json gens;
  for (std::size_t l = 0; l < g.e.size(); ++l) {
    gens["e" + std::to_string(l + 1)] = triplets(g.e[l]);
    gens["f" + std::to_string(l + 1)] = triplets(g.f[l]);
  }
  json k = json::object();
  for (std::size_t l = 0; l < g.k_exponents.size(); ++l) k["k" + std::to_string(l + 1)] = g.k_exponents[l];
  gens["k_exponents"] = k;
  j["generators"] = gens;
  j["report"] = doc.report;
  return j;
}

Document from_json(const json& j) {
  Document doc;
  GeneratorSet& g = doc.rep;
  try {
    const json& q = field(j, "q");
    const std::string kind = field(q, "kind").get<std::string>();
    const int n_states = static_cast<int>(field(j, "basis").size());
    std::vector<GZPattern> states;
    for (const auto& rows : field(j, "basis")) {
      GZPattern p(rows.get<std::vector<std::vector<int>>>());
      if (!validate_pattern(p)) throw Error(ErrorKind::Format, "invalid pattern " + p.str());
      states.push_back(std::move(p));
    }
    if (states.empty()) throw Error(ErrorKind::Format, "empty basis");
    TopRow top(states.front().row(states.front().rank()));
    const int n = top.rank();
    if (field(j, "algebra").get<std::string>() != "sl(" + std::to_string(n) + ")")
      throw Error(ErrorKind::Format, "algebra does not match the basis rank");
    for (const auto& p : states)
      if (p.rank() != n || p.row(n) != top.values) throw Error(ErrorKind::Format, "basis patterns disagree on the top row");
    g.basis = ModuleBasis(top, std::move(states));
    if (static_cast<int>(g.basis.size()) != n_states) throw Error(ErrorKind::Format, "duplicate basis patterns");
    if (kind == "root") {
      g.q = QPoint::root(UnityOrder(field(q, "m").get<int>()));
    } else if (kind == "generic") {
      g.q = QPoint::generic_from_value(cplx(field(q, "re").get<double>(), field(q, "im").get<double>()));
    } else {
      throw Error(ErrorKind::Format, "unknown q kind '" + kind + "'");
    }
    g.convention = convention_from_name(field(j, "convention").get<std::string>());
    const json& gens = field(j, "generators");
    const json& k = field(gens, "k_exponents");
    for (int l = 1; l < n; ++l) {
      const std::string s = std::to_string(l);
      g.e.push_back(read_triplets(field(gens, ("e" + s).c_str()), n_states, "e" + s));
      g.f.push_back(read_triplets(field(gens, ("f" + s).c_str()), n_states, "f" + s));
      auto kx = field(k, ("k" + s).c_str()).get<std::vector<int>>();
      if (static_cast<int>(kx.size()) != n_states) throw Error(ErrorKind::Format, "k" + s + " has the wrong length");
      g.k_exponents.push_back(std::move(kx));
    }
    if (j.contains("report")) doc.report = j.at("report");
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Format, e.what());
  }
  return doc;
}

std::string serialize(const Document& doc) { return to_json(doc).dump(1) + "\n"; }

Document parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Format, e.what());
  }
  return from_json(j);
}

std::string to_csv(const GeneratorSet& g) {
  std::ostringstream os;
  os.precision(17);
  os << "generator,row,col,re,im\n";
  for (std::size_t l = 0; l < g.e.size(); ++l) {
    for (const char* name : {"e", "f"}) {
      const SparseMatrix& s = (name[0] == 'e') ? g.e[l] : g.f[l];
      for (const auto& t : s.entries())
        os << name << l + 1 << ',' << t.row << ',' << t.col << ',' << t.value.real() << ',' << t.value.imag()
           << '\n';
    }
  }
  for (std::size_t l = 0; l < g.k_exponents.size(); ++l)
    for (std::size_t a = 0; a < g.k_exponents[l].size(); ++a) {
      const cplx v = g.q.power(g.k_exponents[l][a]);
      os << 'k' << l + 1 << ',' << a << ',' << a << ',' << v.real() << ',' << v.imag() << '\n';
    }
  return os.str();
}

json report_to_json(const VerificationReport& r) {
  json j;
  j["passed"] = r.passed;
  j["tolerance"] = r.tolerance;
  j["residuals"] = r.residuals;
  j["singular_vectors"] = r.singular_vectors.size();
  j["invariant_dims"] = r.invariant_dims;
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorKind::InvalidArgument, "write failed for " + path);
}

}  // namespace gz
