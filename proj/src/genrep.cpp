#include "gzroots/genrep.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>

#include "gzroots/errors.hpp"

namespace gz {

std::string convention_name(Convention c) {
  switch (c) {
    case Convention::generic: return "generic";
    case Convention::flat_sl3: return "flat_sl3";
    case Convention::modified_sl3: return "modified_sl3";
  }
  return "generic";
}

Convention convention_from_name(const std::string& s) {
  if (s == "generic") return Convention::generic;
  if (s == "flat_sl3") return Convention::flat_sl3;
  if (s == "modified_sl3") return Convention::modified_sl3;
  throw Error(ErrorKind::Format, "unknown convention '" + s + "'");
}

namespace {

FactorProduct merged(const FactorProduct& a, const FactorProduct& b) {
  FactorProduct r;
  r.product = a.product * b.product;
  r.root = a.root * b.root;
  r.zeros = a.zeros + b.zeros;
  r.hard_zero = a.hard_zero || b.hard_zero;
  return r;
}

FactorProduct product_of(std::initializer_list<int> args, const QPoint& q) {
  FactorProduct r;
  for (int n : args) r.include(q_bracket(n, q));
  return r;
}

GZPattern shifted(const GZPattern& p, int j, int l, int delta) {
  GZPattern t = p;
  t.at(j, l) += delta;
  return t;
}

}  // namespace

PFactors p_factors(int j, int l, const GZPattern& p, const QPoint& q) {
  PFactors pf;
  pf.j = j;
  pf.l = l;
  for (int i = 1; i <= l + 1; ++i)
    pf.p1.include(q_bracket(epsilon(i, j) * (p.at(i, l + 1) - p.at(j, l) + 1), q));
  for (int i = 1; i <= l - 1; ++i)
    pf.p2.include(q_bracket(epsilon(j, i) * (p.at(j, l) - p.at(i, l - 1)), q));
  for (int i = 1; i <= l; ++i) {
    if (i == j) continue;
    pf.p3.include(q_bracket(epsilon(i, j) * (p.at(i, l) - p.at(j, l)), q));
    pf.p3.include(q_bracket(epsilon(i, j) * (p.at(i, l) - p.at(j, l) + 1), q));
  }
  pf.eta = pf.p1.zeros + pf.p2.zeros;
  pf.eta_prime = pf.p3.zeros;
  return pf;
}

std::vector<LadderTerm> ladder_action(const GZPattern& p, int l, Direction dir, const QPoint& q) {
  std::vector<LadderTerm> out;
  const int delta = dir == Direction::lower ? -1 : 1;
  for (int j = 1; j <= l; ++j) {
    GZPattern t = shifted(p, j, l, delta);
    // the coefficient is always the lowering one from the upper state
    const GZPattern& upper = dir == Direction::lower ? p : t;
    PFactors pf = p_factors(j, l, upper, q);
    TermValue v = combine_factors(merged(pf.p1, pf.p2), pf.p3);
    if (!validate_pattern(t)) {
      if (!v.zero) throw std::logic_error("nonzero coefficient onto invalid pattern " + t.str());
      continue;
    }
    if (v.divergent) throw DivergentElement(p.str(), j, l);
    if (v.zero) continue;
    out.push_back({p, std::move(t), j, v.value});
  }
  return out;
}

std::vector<LadderTerm> flat_ladder_action(const GZPattern& p, int l, Direction dir, const QPoint& q) {
  if (p.rank() != 3) throw Error(ErrorKind::NotFlat, "the flat convention is defined for sl(3) only");
  const int p13 = p.at(1, 3), p23 = p.at(2, 3), p33 = p.at(3, 3);
  const int p12 = p.at(1, 2), p22 = p.at(2, 2), p11 = p.at(1, 1);
  std::vector<LadderTerm> out;
  auto emit = [&](int j, int lev, int delta, const FactorProduct& num, const FactorProduct& den,
                  const FactorProduct& lin) {
    GZPattern t = shifted(p, j, lev, delta);
    if (!validate_pattern(t)) return;
    TermValue v = combine_factors(num, den, lin);
    if (v.divergent) throw DivergentElement(p.str(), j, lev);
    if (v.zero) return;
    out.push_back({p, std::move(t), j, v.value});
  };
  const FactorProduct none;
  if (dir == Direction::lower && l == 1) {
    emit(1, 1, -1, product_of({p11 - p22 - 1}, q), none, none);
  } else if (dir == Direction::lower && l == 2) {
    emit(1, 2, -1, product_of({p13 - p12 + 1, p12 - p23 - 1, p12 - p33 - 1}, q),
         product_of({p12 - p22 - 1, p12 - p22}, q), product_of({p12 - p11}, q));
    emit(2, 2, -1, product_of({p13 - p22 + 1, p23 - p22 + 1, p11 - p22}, q),
         product_of({p12 - p22 + 1, p12 - p22}, q), product_of({p22 - p33 - 1}, q));
  } else if (dir == Direction::raise && l == 1) {
    emit(1, 1, 1, product_of({p11 - p22}, q), none, product_of({p12 - p11}, q));
  } else if (dir == Direction::raise && l == 2) {
    emit(1, 2, 1, product_of({p13 - p12, p12 - p23, p12 - p33}, q), product_of({p12 - p22 + 1, p12 - p22}, q),
         none);
    emit(2, 2, 1, product_of({p13 - p22, p23 - p22, p11 - p22 - 1}, q),
         product_of({p12 - p22 - 1, p12 - p22}, q), none);
  } else {
    throw Error(ErrorKind::InvalidArgument, "level out of range for sl(3)");
  }
  return out;
}

SparseMatrix::SparseMatrix(int n, std::vector<Triplet> entries) : n_(n), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), [](const Triplet& a, const Triplet& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    const auto& t = entries_[k];
    if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n) throw std::out_of_range("triplet outside matrix");
    if (k && entries_[k - 1].row == t.row && entries_[k - 1].col == t.col)
      throw std::logic_error("duplicate triplet");
  }
}

cplx SparseMatrix::at(int row, int col) const {
  for (const auto& t : entries_)
    if (t.row == row && t.col == col) return t.value;
  return 0.0;
}

std::vector<std::vector<int>> cartan_exponents(const ModuleBasis& basis) {
  const int n = basis.top().rank();
  std::vector<std::vector<int>> k(n - 1, std::vector<int>(basis.size()));
  for (int l = 1; l < n; ++l)
    for (std::size_t a = 0; a < basis.size(); ++a) k[l - 1][a] = cartan_exponent(basis[a], l);
  return k;
}

namespace {

using TermFn = std::vector<LadderTerm> (*)(const GZPattern&, int, Direction, const QPoint&);

// Each source column is computed independently; the parallel and serial paths
// produce identical triplet lists.
SparseMatrix assemble(const ModuleBasis& basis, int l, Direction dir, const QPoint& q, TermFn fn,
                      ExecPolicy policy) {
  const long n = static_cast<long>(basis.size());
  std::vector<std::vector<Triplet>> cols(n);
  std::vector<std::exception_ptr> errors(n);
  auto work = [&](long a) {
    try {
      for (auto& t : fn(basis[a], l, dir, q)) {
        auto idx = basis.find(t.target);
        if (!idx) throw std::logic_error("ladder target outside module: " + t.target.str());
        cols[a].push_back({static_cast<int>(*idx), static_cast<int>(a), t.coefficient});
      }
    } catch (...) {
      errors[a] = std::current_exception();
    }
  };
  if (policy == ExecPolicy::parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (long a = 0; a < n; ++a) work(a);
  } else {
    for (long a = 0; a < n; ++a) work(a);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<Triplet> all;
  for (auto& c : cols) all.insert(all.end(), c.begin(), c.end());
  return SparseMatrix(static_cast<int>(n), std::move(all));
}

GeneratorSet assemble_set(const TopRow& top, const QPoint& q, TermFn fn, Convention conv, ExecPolicy policy) {
  GeneratorSet g;
  g.basis = enumerate_basis(top);
  g.q = q;
  g.convention = conv;
  g.k_exponents = cartan_exponents(g.basis);
  for (int l = 1; l < top.rank(); ++l) {
    g.e.push_back(assemble(g.basis, l, Direction::raise, q, fn, policy));
    g.f.push_back(assemble(g.basis, l, Direction::lower, q, fn, policy));
  }
  return g;
}

}  // namespace

GeneratorSet build_generic_rep(const TopRow& top, const QPoint& q, ExecPolicy policy) {
  if (top.rank() < 2) throw Error(ErrorKind::InvalidArgument, "rank N must be at least 2");
  return assemble_set(top, q, &ladder_action, Convention::generic, policy);
}

GeneratorSet build_flat_sl3(const TopRow& top, UnityOrder m, ExecPolicy policy) {
  if (top.rank() != 3) throw Error(ErrorKind::NotFlat, "flat construction needs N = 3");
  const auto& p = top.values;
  if (p[0] - p[2] != m.m + 1)
    throw Error(ErrorKind::NotFlat, "flat construction needs p13 - p33 = m + 1, got " + std::to_string(p[0] - p[2]) +
                                        " with m=" + std::to_string(m.m));
  return assemble_set(top, q_from_order(m), &flat_ladder_action, Convention::flat_sl3, policy);
}

}  // namespace gz
