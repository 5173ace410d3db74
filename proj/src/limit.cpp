#include "gzroots/limit.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

#include "gzroots/errors.hpp"

namespace gz {

namespace {

using SVec = std::map<int, Laurent>;

struct SeriesMatrix {
  // cols[c] = list of (row, value)
  std::vector<std::vector<std::pair<int, Laurent>>> cols;
};

struct LatticeVector {
  int pivot = 0;
  int valuation = 0;
  SVec v;
};

void add_into(SVec& acc, int k, const Laurent& x) {
  auto it = acc.find(k);
  if (it == acc.end()) {
    if (!x.is_zero()) acc.emplace(k, x);
    return;
  }
  it->second = it->second + x;
  if (it->second.is_zero()) acc.erase(it);
}

SVec apply(const SeriesMatrix& g, const SVec& v) {
  SVec out;
  for (const auto& [c, x] : v)
    for (const auto& [r, a] : g.cols[c]) add_into(out, r, a * x);
  return out;
}

Laurent lowering_series(const GZPattern& p, int j, int l, const QPoint& q, int terms) {
  Laurent r = Laurent::constant(1.0, terms);
  for (int i = 1; i <= l + 1; ++i) {
    Laurent b = bracket_series(epsilon(i, j) * (p.at(i, l + 1) - p.at(j, l) + 1), q, terms);
    if (b.is_zero()) return Laurent();
    r = r * b.sqrt();
  }
  for (int i = 1; i <= l - 1; ++i) {
    Laurent b = bracket_series(epsilon(j, i) * (p.at(j, l) - p.at(i, l - 1)), q, terms);
    if (b.is_zero()) return Laurent();
    r = r * b.sqrt();
  }
  for (int i = 1; i <= l; ++i) {
    if (i == j) continue;
    Laurent b1 = bracket_series(epsilon(i, j) * (p.at(i, l) - p.at(j, l)), q, terms);
    Laurent b2 = bracket_series(epsilon(i, j) * (p.at(i, l) - p.at(j, l) + 1), q, terms);
    if (b1.is_zero() || b2.is_zero()) throw std::logic_error("zero denominator for a valid target");
    r = r / (b1.sqrt() * b2.sqrt());
  }
  return r;
}

// Returns (f_l, e_l) for every level.
std::pair<std::vector<SeriesMatrix>, std::vector<SeriesMatrix>> series_generators(const ModuleBasis& basis,
                                                                                  const QPoint& q, int terms) {
  const int n = basis.top().rank();
  const int d = static_cast<int>(basis.size());
  std::vector<SeriesMatrix> fs(n - 1), es(n - 1);
  for (int l = 1; l < n; ++l) {
    auto& f = fs[l - 1];
    auto& e = es[l - 1];
    f.cols.assign(d, {});
    e.cols.assign(d, {});
    for (int a = 0; a < d; ++a) {
      const GZPattern& p = basis[a];
      for (int j = 1; j <= l; ++j) {
        GZPattern t = p;
        t.at(j, l) -= 1;
        auto idx = basis.find(t);
        if (!idx) continue;
        Laurent x = lowering_series(p, j, l, q, terms);
        if (x.is_zero()) continue;
        const int b = static_cast<int>(*idx);
        f.cols[a].emplace_back(b, x);
        e.cols[b].emplace_back(a, x);
      }
    }
  }
  return {fs, es};
}

int entry_valuation(const Laurent& x) { return x.valuation(); }

std::vector<LatticeVector> reduce(std::vector<SVec> gens) {
  std::vector<LatticeVector> basis;
  while (true) {
    gens.erase(std::remove_if(gens.begin(), gens.end(), [](const SVec& g) { return g.empty(); }), gens.end());
    if (gens.empty()) break;
    std::tuple<int, std::size_t, int, std::size_t> best{0, 0, 0, 0};
    bool have = false;
    for (std::size_t gi = 0; gi < gens.size(); ++gi)
      for (const auto& [c, x] : gens[gi]) {
        std::tuple<int, std::size_t, int, std::size_t> key{entry_valuation(x), gens[gi].size(), c, gi};
        if (!have || key < best) {
          best = key;
          have = true;
        }
      }
    const auto [v, nnz, c, gi] = best;
    (void)nnz;
    SVec g = std::move(gens[gi]);
    gens.erase(gens.begin() + static_cast<long>(gi));
    const Laurent unit_inv = g.at(c).shifted(-v).inverse();
    for (auto& [k, x] : g) x = x * unit_inv;
    g[c] = Laurent::monomial(1.0, v, g.at(c).terms());
    for (auto& h : gens) {
      auto it = h.find(c);
      if (it == h.end()) continue;
      const Laurent r = it->second.shifted(-v);
      for (const auto& [k, x] : g) {
        if (k == c) continue;
        add_into(h, k, -(r * x));
      }
      h.erase(c);
    }
    basis.push_back({c, v, std::move(g)});
  }
  return basis;
}

}  // namespace

LimitBuild build_limit_rep(const TopRow& top, const QPoint& q, const LimitOptions& opt) {
  if (top.rank() < 2) throw Error(ErrorKind::InvalidArgument, "rank N must be at least 2");
  LimitBuild out;
  ModuleBasis basis = enumerate_basis(top);
  const int d = static_cast<int>(basis.size());
  const auto kexp = cartan_exponents(basis);
  auto [fs, es] = series_generators(basis, q, opt.terms);

  std::map<std::vector<int>, int> weight_id;
  std::vector<int> weight_of(d);
  std::vector<std::vector<int>> members;
  for (int a = 0; a < d; ++a) {
    std::vector<int> w;
    for (const auto& k : kexp) w.push_back(k[a]);
    auto [it, fresh] = weight_id.emplace(w, static_cast<int>(members.size()));
    if (fresh) members.emplace_back();
    weight_of[a] = it->second;
    members[it->second].push_back(a);
  }
  const int nw = static_cast<int>(members.size());

  std::vector<std::vector<LatticeVector>> lattice(nw);
  for (int w = 0; w < nw; ++w)
    for (int a : members[w]) lattice[w].push_back({a, 0, SVec{{a, Laurent::constant(1.0, opt.terms)}}});

  auto signature = [](const std::vector<std::vector<LatticeVector>>& lat) {
    std::vector<std::vector<std::pair<int, int>>> sig;
    for (const auto& bs : lat) {
      std::vector<std::pair<int, int>> s;
      for (const auto& b : bs) s.emplace_back(b.pivot, b.valuation);
      sig.push_back(std::move(s));
    }
    return sig;
  };

  std::vector<const SeriesMatrix*> gens;
  for (auto& e : es) gens.push_back(&e);
  for (auto& f : fs) gens.push_back(&f);

  bool stable = false;
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    std::vector<std::vector<SVec>> pool(nw);
    for (int w = 0; w < nw; ++w)
      for (const auto& b : lattice[w]) pool[w].push_back(b.v);
    for (int w = 0; w < nw; ++w)
      for (const auto* g : gens)
        for (const auto& b : lattice[w]) {
          SVec img = apply(*g, b.v);
          if (img.empty()) continue;
          pool[weight_of[img.begin()->first]].push_back(std::move(img));
        }
    std::vector<std::vector<LatticeVector>> next(nw);
    for (int w = 0; w < nw; ++w) next[w] = reduce(std::move(pool[w]));
    const bool same = signature(next) == signature(lattice);
    lattice = std::move(next);
    if (same) {
      stable = true;
      break;
    }
  }
  if (!stable)
    throw Error(ErrorKind::UnresolvedDivergence,
                "lattice did not stabilise after " + std::to_string(opt.max_iterations) + " iterations");
  out.iterations = it + 1;

  int precision = opt.terms;
  for (int w = 0; w < nw; ++w) {
    if (lattice[w].size() != members[w].size())
      throw Error(ErrorKind::UnresolvedDivergence, "weight space lost rank during saturation");
    for (const auto& b : lattice[w])
      for (const auto& [k, x] : b.v) precision = std::min(precision, x.valuation() + x.terms() - b.valuation);
  }

  // M = T^-1 G T per weight block; T is lower triangular in selection order
  auto transform = [&](const SeriesMatrix& g, const std::string& name) {
    std::vector<Triplet> trip;
    for (int w = 0; w < nw; ++w)
      for (const auto& b : lattice[w]) {
        SVec y = apply(g, b.v);
        if (y.empty()) continue;
        const auto& tb = lattice[weight_of[y.begin()->first]];
        std::vector<Laurent> x(tb.size());
        for (std::size_t i = 0; i < tb.size(); ++i) {
          const int ci = tb[i].pivot;
          Laurent acc;
          auto yi = y.find(ci);
          if (yi != y.end()) acc = yi->second;
          for (std::size_t k = 0; k < i; ++k) {
            auto tk = tb[k].v.find(ci);
            if (tk == tb[k].v.end() || x[k].is_zero()) continue;
            acc = acc - tk->second * x[k];
          }
          x[i] = acc.shifted(-tb[i].valuation);
          if (x[i].is_zero()) continue;
          precision = std::min(precision, x[i].valuation() + x[i].terms());
          if (x[i].valuation() < 0)
            throw Error(ErrorKind::UnresolvedDivergence, name + " diverges from " + basis[b.pivot].str() +
                                                             " onto " + basis[ci].str() + " after saturation");
          if (x[i].valuation() == 0) trip.push_back({ci, b.pivot, x[i].leading()});
        }
      }
    return SparseMatrix(d, std::move(trip));
  };

  GeneratorSet& rep = out.rep;
  rep.basis = basis;
  rep.q = q;
  rep.convention = Convention::modified_sl3;
  rep.k_exponents = kexp;
  for (int l = 1; l < top.rank(); ++l) {
    rep.e.push_back(transform(es[l - 1], "e" + std::to_string(l)));
    rep.f.push_back(transform(fs[l - 1], "f" + std::to_string(l)));
  }
  if (precision < 4) throw Error(ErrorKind::UnresolvedDivergence, "series precision exhausted");
  out.precision = precision;

  out.states.resize(d);
  for (int w = 0; w < nw; ++w)
    for (const auto& b : lattice[w]) {
      LimitState s;
      s.pivot = b.pivot;
      s.valuation = b.valuation;
      s.modified = b.v.size() > 1;
      for (const auto& [k, x] : b.v) s.components.push_back({k, x.valuation(), x.leading()});
      out.states[b.pivot] = std::move(s);
    }
  return out;
}

}  // namespace gz
