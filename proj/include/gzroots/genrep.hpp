#pragma once

#include <string>
#include <vector>

#include "gzroots/gzbasis.hpp"
#include "gzroots/qarith.hpp"

namespace gz {

enum class Convention { generic, flat_sl3, modified_sl3 };
enum class Direction { lower, raise };
enum class ExecPolicy { serial, parallel };

std::string convention_name(Convention c);
Convention convention_from_name(const std::string& s);

struct PFactors {
  int j = 0;
  int l = 0;
  FactorProduct p1;
  FactorProduct p2;
  FactorProduct p3;
  int eta = 0;
  int eta_prime = 0;
};

PFactors p_factors(int j, int l, const GZPattern& p, const QPoint& q);

struct LadderTerm {
  GZPattern source;
  GZPattern target;
  int j = 0;
  cplx coefficient;
};

std::vector<LadderTerm> ladder_action(const GZPattern& p, int l, Direction dir, const QPoint& q);

// The asymmetric sl(3) convention used for flat modules (p13 - p33 = m + 1).
std::vector<LadderTerm> flat_ladder_action(const GZPattern& p, int l, Direction dir, const QPoint& q);

struct Triplet {
  int row = 0;
  int col = 0;
  cplx value;
};

// Coordinate storage, kept sorted by (col, row) with no duplicates.
class SparseMatrix {
public:
  SparseMatrix() = default;
  SparseMatrix(int n, std::vector<Triplet> entries);
  int size() const { return n_; }
  const std::vector<Triplet>& entries() const { return entries_; }
  cplx at(int row, int col) const;
  std::size_t nonzeros() const { return entries_.size(); }

private:
  int n_ = 0;
  std::vector<Triplet> entries_;
};

struct GeneratorSet {
  ModuleBasis basis;
  std::vector<SparseMatrix> e;
  std::vector<SparseMatrix> f;
  std::vector<std::vector<int>> k_exponents;  // k_exponents[l-1][state]
  QPoint q = QPoint::generic(0.37);
  Convention convention = Convention::generic;

  int rank() const { return basis.top().rank(); }
  int dim() const { return static_cast<int>(basis.size()); }
};

std::vector<std::vector<int>> cartan_exponents(const ModuleBasis& basis);

GeneratorSet build_generic_rep(const TopRow& top, const QPoint& q, ExecPolicy policy = ExecPolicy::parallel);

GeneratorSet build_flat_sl3(const TopRow& top, UnityOrder m, ExecPolicy policy = ExecPolicy::parallel);

}  // namespace gz
