#include "gzroots/atypical.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>

#include "gzroots/errors.hpp"

namespace gz {

namespace {

int mod_pos(int n, int m) { return ((n % m) + m) % m; }

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void check_level(const GZPattern& p, int l) {
  if (l < 1 || l >= p.rank()) throw Error(ErrorKind::InvalidArgument, "level out of range");
}

// row-l vector that keeps betweenness with row l+1 and admits some row l-1
bool row_fits(const GZPattern& p, int l, const std::vector<int>& row) {
  for (int i = 1; i <= l; ++i) {
    if (!(p.at(i, l + 1) >= row[i - 1] && row[i - 1] > p.at(i + 1, l + 1))) return false;
    if (i < l && row[i - 1] <= row[i]) return false;
  }
  return true;
}

GZPattern with_row(const GZPattern& p, int l, const std::vector<int>& row) {
  GZPattern t = p;
  t.row(l) = row;
  return t;
}

std::vector<int> weight_of(const GZPattern& p) {
  std::vector<int> w;
  for (int l = 1; l < p.rank(); ++l) w.push_back(cartan_exponent(p, l));
  return w;
}

}  // namespace

TypePartition classify_row_type(const std::vector<int>& row, UnityOrder m) {
  for (std::size_t i = 0; i + 1 < row.size(); ++i)
    if (row[i] <= row[i + 1]) throw Error(ErrorKind::InvalidArgument, "row must be strictly decreasing");
  TypePartition t;
  t.l = static_cast<int>(row.size());
  t.m = m.m;
  t.beta.assign(row.empty() ? 0 : row.size() - 1, 0);
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i == 0 || (row[i - 1] - row[i]) % m.m != 0) t.subsets.emplace_back();
    else t.beta[i - 1] = (row[i - 1] - row[i]) / m.m;
    t.subsets.back().push_back(static_cast<int>(i) + 1);
  }
  const std::size_t k = t.subsets.size();
  t.zeta.assign(k, std::vector<int>(k, 0));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      t.zeta[a][b] = mod_pos(row[t.subsets[a][0] - 1] - row[t.subsets[b][0] - 1], m.m);
  return t;
}

GZPattern exchange_map(const GZPattern& p, int l, int i, int j, int multiple, UnityOrder m) {
  check_level(p, l);
  if (!(1 <= i && i < j && j <= l)) throw Error(ErrorKind::InvalidArgument, "exchange needs 1 <= i < j <= l");
  const int pi = p.at(i, l), pj = p.at(j, l);
  const int zeta = pi - pj - multiple * m.m;
  if (zeta % m.m == 0 || std::abs(zeta) >= m.m)
    throw Error(ErrorKind::NotDegenerate, "row entries " + std::to_string(pi) + ", " + std::to_string(pj) +
                                              " with multiple " + std::to_string(multiple) +
                                              " give offset " + std::to_string(zeta));
  GZPattern t = p;
  t.at(i, l) = pj + multiple * m.m;
  t.at(j, l) = pi - multiple * m.m;
  return t;
}

GZPattern exchange_map(const GZPattern& p, int l, int i, int j, UnityOrder m) {
  check_level(p, l);
  if (!(1 <= i && i < j && j <= l)) throw Error(ErrorKind::InvalidArgument, "exchange needs 1 <= i < j <= l");
  const int diff = p.at(i, l) - p.at(j, l);
  const int r = mod_pos(diff, m.m);
  if (r == 0) throw Error(ErrorKind::NotDegenerate, "entries are congruent mod m");
  return exchange_map(p, l, i, j, (diff - r) / m.m, m);
}

DegenerateOrbit orbit(const GZPattern& p, int l, UnityOrder m) {
  check_level(p, l);
  DegenerateOrbit o;
  o.l = l;
  o.partition = classify_row_type(p.row(l), m);
  const std::vector<int> w0 = weight_of(p);
  std::set<std::vector<int>> seen{p.row(l)};
  std::deque<std::vector<int>> todo{p.row(l)};
  while (!todo.empty()) {
    std::vector<int> row = todo.front();
    todo.pop_front();
    GZPattern cur = with_row(p, l, row);
    for (int i = 1; i <= l; ++i)
      for (int j = i + 1; j <= l; ++j) {
        const int diff = row[i - 1] - row[j - 1];
        if (mod_pos(diff, m.m) == 0) continue;
        const int b0 = floor_div(diff, m.m);
        for (int b : {b0, b0 + 1}) {
          GZPattern t = exchange_map(cur, l, i, j, b, m);
          const std::vector<int>& r = t.row(l);
          if (!row_fits(p, l, r) || seen.count(r)) continue;
          if (weight_of(t) != w0) throw std::logic_error("exchange map changed a Cartan exponent");
          seen.insert(r);
          todo.push_back(r);
        }
      }
  }
  o.members.assign(seen.begin(), seen.end());
  return o;
}

const DegenerateOrbit& OrbitRegistry::add(const GZPattern& p, int l, UnityOrder m) {
  Key key{weight_of(p), l};
  auto& list = orbits_[key];
  for (const auto& o : list)
    if (std::find(o.members.begin(), o.members.end(), p.row(l)) != o.members.end()) return o;
  list.push_back(orbit(p, l, m));
  return list.back();
}

const DegenerateOrbit* OrbitRegistry::find(const std::vector<int>& weight, int l) const {
  auto it = orbits_.find(Key{weight, l});
  if (it == orbits_.end() || it->second.empty()) return nullptr;
  return &it->second.front();
}

const char* case_name(SlCase c) {
  switch (c) {
    case SlCase::a: return "a";
    case SlCase::b: return "b";
    case SlCase::c: return "c";
    case SlCase::none: return "none";
  }
  return "none";
}

SlCase detect_case_sl3(const GZPattern& p, UnityOrder m) {
  if (p.rank() != 3) throw Error(ErrorKind::InvalidArgument, "case detection is for sl(3) patterns");
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 2; ++j)
      if (mod_pos(p.at(i, 3) - p.at(j, 2) + 1, m.m) == 0)
        throw Error(ErrorKind::PreconditionViolated, "numerator zero [p" + std::to_string(i) + "3 - p" +
                                                         std::to_string(j) + "2 + 1] in " + p.str());
  for (int i = 1; i <= 2; ++i)
    if (mod_pos(p.at(i, 2) - p.at(1, 1), m.m) == 0)
      throw Error(ErrorKind::PreconditionViolated,
                  "numerator zero [p" + std::to_string(i) + "2 - p11] in " + p.str());
  const int d = p.at(1, 2) - p.at(2, 2);
  auto fires = [&](int x) { return x % m.m == 0 && x / m.m >= 1; };
  std::vector<SlCase> hits;
  if (fires(d)) hits.push_back(SlCase::a);
  if (fires(d + 1)) hits.push_back(SlCase::b);
  if (fires(d - 1)) hits.push_back(SlCase::c);
  if (hits.size() > 1) throw std::logic_error("more than one divergence case fires");
  return hits.empty() ? SlCase::none : hits.front();
}

BasisRotation rotation_sl3(SlCase which, int gap, const QPoint& q) {
  int a = 0, up = 0, down = 0;
  switch (which) {
    case SlCase::a: a = gap; up = a - 1; down = a + 1; break;
    case SlCase::b: a = gap + 1; up = a - 1; down = a + 1; break;
    case SlCase::c: a = gap - 1; up = a + 1; down = a - 1; break;
    case SlCase::none: throw Error(ErrorKind::UnknownCase, "no rotation for case none");
  }
  BracketValue ba = q_bracket(a, q), b2 = q_bracket(2, q);
  if (ba.exactly_zero || b2.exactly_zero)
    throw Error(ErrorKind::FormalAngle, "[" + std::to_string(a) + "] vanishes at this q; the angle is formal");
  BasisRotation r;
  r.which = which;
  r.gap = gap;
  r.cos_phi = principal_sqrt(q_bracket(up, q).value / (b2.value * ba.value));
  r.sin_phi = principal_sqrt(q_bracket(down, q).value / (b2.value * ba.value));
  r.D.resize(2, 2);
  r.D << r.cos_phi, r.sin_phi, -r.sin_phi, r.cos_phi;
  return r;
}

Eigen::Matrix2d rotation_matrix(double phi) {
  Eigen::Matrix2d d;
  d << std::cos(phi), std::sin(phi), -std::sin(phi), std::cos(phi);
  return d;
}

Aggregation aggregate_lowering(const GZPattern& p, int l, const QPoint& q) {
  Aggregation g;
  cplx sum = 0.0;
  bool real = true;
  for (auto& t : ladder_action(p, l, Direction::lower, q)) {
    g.coefficients.push_back(t.coefficient);
    g.targets.push_back(t.target);
    sum += t.coefficient * t.coefficient;
    if (std::abs(t.coefficient.imag()) > 1e-14 * std::abs(t.coefficient)) real = false;
  }
  g.value = std::sqrt(sum);
  const int k = static_cast<int>(g.coefficients.size());
  if (k == 0 || !real) return g;
  Eigen::VectorXd u(k);
  for (int i = 0; i < k; ++i) u[i] = g.coefficients[i].real();
  u /= u.norm();
  Eigen::VectorXd w = -u;
  w[0] += 1.0;
  g.D = Eigen::MatrixXd::Identity(k, k);
  if (w.norm() > 1e-15) g.D -= 2.0 * w * w.transpose() / w.squaredNorm();
  return g;
}

cplx kappa_sl3(const GZPattern& p, const QPoint& q) {
  const int p13 = p.at(1, 3), p23 = p.at(2, 3), p33 = p.at(3, 3), p22 = p.at(2, 2), p11 = p.at(1, 1);
  const BracketValue f[] = {q_bracket(p13 - p22 + 1, q), q_bracket(p23 - p22 + 1, q), q_bracket(p22 - p33 - 1, q),
                            q_bracket(p11 - p22, q)};
  return sqrt_signed_product(f);
}

ClosedFormModel::ClosedFormModel(const TopRow& top, UnityOrder m)
    : top_(top), m_(m.m), q_(q_from_order(m)), basis_(enumerate_basis(top)) {
  if (top.rank() != 3) throw Error(ErrorKind::InvalidArgument, "closed forms exist for sl(3) only");
  for (const auto& p : basis_.states()) {
    SlCase c;
    try {
      c = detect_case_sl3(p, m);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::PreconditionViolated) continue;
      throw;
    }
    const int a = p.at(1, 2), b = p.at(2, 2);
    auto put = [&](int x12, int x22, int member) {
      for (const auto& s : basis_.states())
        if (s.at(1, 2) == x12 && s.at(2, 2) == x22) add(s, c, member, a, b);
    };
    switch (c) {
      case SlCase::a:
        put(a - 1, b, 0);
        put(a, b - 1, 1);
        break;
      case SlCase::b:
        put(a, b, 0);
        put(a + 1, b - 1, 1);
        put(a - 1, b, 2);
        put(a + 1, b - 2, 3);
        break;
      case SlCase::c:
        put(a, b, 0);
        put(a - 1, b + 1, 1);
        put(a, b - 1, 2);
        put(a - 2, b + 1, 3);
        break;
      case SlCase::none: break;
    }
  }
}

void ClosedFormModel::add(const GZPattern& p, SlCase c, int member, int ref12, int ref22) {
  ModifiedState s;
  s.pattern = p;
  s.flavor = Flavor::modified;
  s.origin = c;
  s.member = member;
  s.ref12 = ref12;
  s.ref22 = ref22;
  registry_.emplace(p, s);
}

ModifiedState ClosedFormModel::state(const GZPattern& p) const {
  auto it = registry_.find(p);
  if (it != registry_.end()) return it->second;
  ModifiedState s;
  s.pattern = p;
  return s;
}

ModifiedTerm ClosedFormModel::term(const ModifiedState& s, const GZPattern& target, std::initializer_list<int> num,
                                   std::initializer_list<int> den, bool& ok) const {
  ok = false;
  if (!basis_.find(target)) return {};
  FactorProduct fn, fd;
  for (int n : num) fn.include(q_bracket(n, q_));
  for (int n : den) fd.include(q_bracket(n, q_));
  TermValue v = combine_factors(fn, fd);
  if (v.divergent) throw DivergentElement(s.pattern.str(), 0, 0);
  if (v.zero) return {};
  ok = true;
  return {s, state(target), v.value};
}

std::vector<ModifiedTerm> ClosedFormModel::lower(const ModifiedState& s, int l) const {
  const GZPattern& p = s.pattern;
  const int p13 = p.at(1, 3), p23 = p.at(2, 3), p33 = p.at(3, 3);
  const int p12 = p.at(1, 2), p22 = p.at(2, 2), p11 = p.at(1, 1);
  const int m = m_;
  const int P12 = s.ref12, P22 = s.ref22;
  std::vector<ModifiedTerm> out;
  bool ok = false;
  auto keep = [&](ModifiedTerm t, bool primitive_target = false) {
    if (!ok) return;
    if (primitive_target) {
      t.target.flavor = Flavor::primitive;
      t.target.origin = SlCase::none;
      t.target.member = 0;
    }
    out.push_back(std::move(t));
  };
  auto pat = [&](int x12, int x22, int x11) { return GZPattern({top_.values, {x12, x22}, {x11}}); };

  if (l == 1) {
    if (s.flavor == Flavor::modified && s.origin == SlCase::a) {
      if (p11 != P22 + 1) {
        if (s.member == 0) keep(term(s, pat(p12, p22, p11 - 1), {P12 - p11, p11 - P22 - 1}, {}, ok));
        else keep(term(s, pat(p12, p22, p11 - 1), {P12 - p11 + 1, p11 - P22}, {}, ok));
      } else {
        const GZPattern t = pat(P12, P22 - 1, p11 - 1);
        if (s.member == 0) {
          ModifiedTerm mt = term(s, t, {m + 1}, {2}, ok);
          mt.coefficient *= q_bracket(m - 1, q_).value;
          keep(mt, true);
        } else {
          keep(term(s, t, {m - 1}, {2}, ok), true);
        }
      }
      return out;
    }
    if (s.flavor == Flavor::modified) {
      keep(term(s, pat(p12, p22, p11 - 1), {p12 - p11 + 1, p11 - p22 - 1}, {}, ok));
      return out;
    }
    throw Error(ErrorKind::UnknownCase, "primitive state " + p.str() + " has no modified f1 rule");
  }
  if (l != 2) throw Error(ErrorKind::InvalidArgument, "level out of range for sl(3)");

  if (s.flavor == Flavor::primitive) {
    SlCase c = SlCase::none;
    try {
      c = detect_case_sl3(p, UnityOrder(m));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PreconditionViolated) throw;
    }
    if (c != SlCase::a) throw Error(ErrorKind::UnknownCase, "no closed form for f2 on " + p.str());
    keep(term(s, pat(p12, p22 - 1, p11), {2, p13 - p22 + 1, p23 - p22 + 1, p22 - p33 - 1, p11 - p22},
              {p12 - p22 - 1, p12 - p22 + 1}, ok));
    return out;
  }
  if (s.origin == SlCase::b) {
    if (s.member == 0) {
      keep(term(s, pat(P12 - 1, P22, p11), {p13 - P12 + 1, P12 - p23 - 1, P12 - p33 - 1, P12 - p11},
                {P12 - P22, P12 - P22 - 1}, ok));
      return out;
    }
    if (s.member == 1) {
      keep(term(s, pat(P12 + 1, P22 - 2, p11), {p13 - P22 + 2, p23 - P22 + 2, P22 - p33 - 2, p11 - P22 + 1},
                {P12 - P22 + 2, P12 - P22 + 3}, ok));
      keep(term(s, pat(P12, P22 - 1, p11), {2, p13 - P22 + 1, p23 - P22 + 1, P22 - p33 - 1, p11 - P22},
                {P12 - P22, P12 - P22 + 2}, ok),
           true);
      return out;
    }
    if (s.member == 2) {
      keep(term(s, pat(P12 - 2, P22, p11), {p13 - P12 + 2, P12 - p23 - 2, P12 - p33 - 2, P12 - p11 - 1},
                {P12 - P22 - 1, P12 - P22 - 2}, ok));
      keep(term(s, pat(P12 - 1, P22 - 1, p11), {p13 - P22 + 1, p23 - P22 + 1, P22 - p33 - 1, p11 - P22},
                {P12 - P22 - 1, P12 - P22}, ok));
      return out;
    }
  }
  if (s.origin == SlCase::c) {
    if (s.member == 0) {
      keep(term(s, pat(P12, P22 - 1, p11), {p13 - P12 + 1, P12 - p23 - 1, P12 - p33 - 1, P12 - p11},
                {P12 - P22, P12 - P22 + 1}, ok));
      return out;
    }
    if (s.member == 1) {
      keep(term(s, pat(P12 - 2, P22 + 1, p11), {p13 - P22 + 1, p23 - P22 + 1, P22 - p33 - 1, p11 - P22},
                {P12 - P22, P12 - P22 + 1}, ok));
      keep(term(s, pat(P12 - 1, P22, p11), {2, p13 - P12 + 1, P12 - p23 - 1, P12 - p33 - 1, P12 - p11},
                {P12 - P22, P12 - P22 - 2}, ok),
           true);
      return out;
    }
  }
  throw Error(ErrorKind::UnknownCase, "no closed form for f2 on modified state " + p.str() + " (case " +
                                          case_name(s.origin) + ", member " + std::to_string(s.member) + ")");
}

std::vector<ModifiedTerm> ClosedFormModel::raise(const ModifiedState& s, int l) const {
  std::vector<ModifiedTerm> out;
  for (const auto& x : basis_.states()) {
    ModifiedState sx = state(x);
    std::vector<ModifiedTerm> down;
    try {
      down = lower(sx, l);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UnknownCase && e.kind() != ErrorKind::DivergentElement) throw;
      continue;
    }
    for (const auto& t : down)
      if (t.target.pattern == s.pattern && t.target.flavor == s.flavor) out.push_back({s, sx, t.coefficient});
  }
  return out;
}

std::vector<ModifiedTerm> modified_ladder_sl3(const ModifiedState& s, int l, Direction dir, const QPoint& q,
                                              UnityOrder m) {
  if (!q.is_root() || q.order() != m.m) throw Error(ErrorKind::OrderMismatch, "closed forms need q of order m");
  if (s.pattern.rank() != 3) throw Error(ErrorKind::InvalidArgument, "closed forms exist for sl(3) only");
  ClosedFormModel model(TopRow(s.pattern.row(3)), m);
  return dir == Direction::lower ? model.lower(s, l) : model.raise(s, l);
}

AtypicalBuild build_atypical_sl3_detailed(const TopRow& top, UnityOrder m) {
  if (top.rank() != 3) throw Error(ErrorKind::InvalidArgument, "the atypical builder is wired for N = 3");
  if (!top.strictly_decreasing()) throw Error(ErrorKind::EmptyModule, "top row " + top.str() + " is not strictly decreasing");
  const int gap = top.values[0] - top.values[2];
  if (gap <= m.m)
    throw Error(ErrorKind::PreconditionViolated, "p13 - p33 = " + std::to_string(gap) + " must exceed m = " +
                                                     std::to_string(m.m));
  AtypicalBuild out;
  if (gap == m.m + 1) {
    out.rep = build_flat_sl3(top, m);
    out.delegated_flat = true;
    for (const auto& p : out.rep.basis.states()) out.states.push_back(ModifiedState{p});
    return out;
  }
  LimitBuild lb = build_limit_rep(top, q_from_order(m));
  out.rep = std::move(lb.rep);
  out.iterations = lb.iterations;
  out.composition = std::move(lb.states);
  OrbitRegistry reg;
  for (std::size_t a = 0; a < out.rep.basis.size(); ++a) {
    ModifiedState s;
    s.pattern = out.rep.basis[a];
    if (out.composition[a].modified) {
      s.flavor = Flavor::modified;
      reg.add(s.pattern, 2, m);
    }
    out.states.push_back(std::move(s));
  }
  for (const auto& [key, list] : reg.all())
    for (const auto& o : list) out.orbits.push_back(o);
  return out;
}

GeneratorSet build_atypical_sl3(const TopRow& top, UnityOrder m) { return build_atypical_sl3_detailed(top, m).rep; }

}  // namespace gz
