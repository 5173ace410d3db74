#pragma once

#include <map>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "gzroots/genrep.hpp"
#include "gzroots/limit.hpp"

namespace gz {

struct TypePartition {
  int l = 0;
  int m = 0;
  std::vector<std::vector<int>> subsets;  // 1-based row indices, consecutive
  // zeta[k][s] for k < s: difference of block leaders mod m, in [0, m)
  std::vector<std::vector<int>> zeta;
  // beta[i-1] = (p_i - p_{i+1}) / m when i and i+1 share a block, else 0
  std::vector<int> beta;
};

TypePartition classify_row_type(const std::vector<int>& row, UnityOrder m);

// p'_i = p_j + B m, p'_j = p_i - B m on row l, where p_i - p_j = zeta + B m
// with 1 <= |zeta| <= m - 1. The result is not validated.
GZPattern exchange_map(const GZPattern& p, int l, int i, int j, int multiple, UnityOrder m);
// B chosen so that zeta is the residue in (0, m)
GZPattern exchange_map(const GZPattern& p, int l, int i, int j, UnityOrder m);

struct DegenerateOrbit {
  int l = 0;
  std::vector<std::vector<int>> members;  // row-l vectors, sorted
  TypePartition partition;
};

DegenerateOrbit orbit(const GZPattern& p, int l, UnityOrder m);

class OrbitRegistry {
public:
  using Key = std::pair<std::vector<int>, int>;  // (Cartan exponents, level)
  const DegenerateOrbit& add(const GZPattern& p, int l, UnityOrder m);
  const DegenerateOrbit* find(const std::vector<int>& weight, int l) const;
  std::size_t size() const { return orbits_.size(); }
  const std::map<Key, std::vector<DegenerateOrbit>>& all() const { return orbits_; }

private:
  std::map<Key, std::vector<DegenerateOrbit>> orbits_;
};

enum class SlCase { a, b, c, none };
const char* case_name(SlCase c);

SlCase detect_case_sl3(const GZPattern& p, UnityOrder m);

struct BasisRotation {
  SlCase which = SlCase::none;
  int gap = 0;
  cplx cos_phi;
  cplx sin_phi;
  Eigen::MatrixXcd D;  // [[cos, sin], [-sin, cos]]
};

BasisRotation rotation_sl3(SlCase which, int gap, const QPoint& q);

// D(phi) for an explicit angle, for group-law checks
Eigen::Matrix2d rotation_matrix(double phi);

// The single-term choice: A_1 = (sum_j c_j^2)^(1/2), A_i = 0 otherwise,
// with D the reflection taking e_1 to c / |c|.
struct Aggregation {
  std::vector<cplx> coefficients;
  std::vector<GZPattern> targets;
  cplx value;
  Eigen::MatrixXd D;
};

Aggregation aggregate_lowering(const GZPattern& p, int l, const QPoint& q);

enum class Flavor { primitive, modified };

struct ModifiedState {
  GZPattern pattern;
  Flavor flavor = Flavor::primitive;
  SlCase origin = SlCase::none;
  int member = 0;
  int ref12 = 0;  // p12, p22 of the state that defines the case formulas
  int ref22 = 0;
};

struct ModifiedTerm {
  ModifiedState source;
  ModifiedState target;
  cplx coefficient;
};

cplx kappa_sl3(const GZPattern& p, const QPoint& q);

// Closed-form modified actions for sl(3), evaluated at the root of unity.
class ClosedFormModel {
public:
  ClosedFormModel(const TopRow& top, UnityOrder m);

  const std::map<GZPattern, ModifiedState>& registry() const { return registry_; }
  ModifiedState state(const GZPattern& p) const;
  std::vector<ModifiedTerm> lower(const ModifiedState& s, int l) const;
  std::vector<ModifiedTerm> raise(const ModifiedState& s, int l) const;

private:
  void add(const GZPattern& p, SlCase c, int member, int ref12, int ref22);
  ModifiedTerm term(const ModifiedState& s, const GZPattern& target, std::initializer_list<int> num,
                    std::initializer_list<int> den, bool& ok) const;
  TopRow top_;
  int m_;
  QPoint q_;
  ModuleBasis basis_;
  std::map<GZPattern, ModifiedState> registry_;
};

std::vector<ModifiedTerm> modified_ladder_sl3(const ModifiedState& s, int l, Direction dir, const QPoint& q,
                                              UnityOrder m);

struct AtypicalBuild {
  GeneratorSet rep;
  std::vector<ModifiedState> states;
  std::vector<LimitState> composition;
  std::vector<DegenerateOrbit> orbits;
  int iterations = 0;
  bool delegated_flat = false;
};

AtypicalBuild build_atypical_sl3_detailed(const TopRow& top, UnityOrder m);
GeneratorSet build_atypical_sl3(const TopRow& top, UnityOrder m);

}  // namespace gz
