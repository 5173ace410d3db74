#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gz {

// Triangular array p_{ij}, 1 <= i <= j <= N. Rows are stored top-down, so
// rows()[0] is row N (the top row) and rows()[N-1] holds p_{11}.
class GZPattern {
public:
  GZPattern() = default;
  explicit GZPattern(std::vector<std::vector<int>> rows_top_down);

  int rank() const { return static_cast<int>(rows_.size()); }
  int at(int i, int j) const { return rows_[rows_.size() - j][i - 1]; }
  int& at(int i, int j) { return rows_[rows_.size() - j][i - 1]; }
  const std::vector<int>& row(int j) const { return rows_[rows_.size() - j]; }
  std::vector<int>& row(int j) { return rows_[rows_.size() - j]; }
  const std::vector<std::vector<int>>& rows() const { return rows_; }

  std::string str() const;
  static GZPattern parse(std::string_view text);

  auto operator<=>(const GZPattern&) const = default;
  bool operator==(const GZPattern&) const = default;

private:
  std::vector<std::vector<int>> rows_;
};

struct TopRow {
  TopRow() = default;
  explicit TopRow(std::vector<int> v) : values(std::move(v)) {}
  int rank() const { return static_cast<int>(values.size()); }
  bool strictly_decreasing() const;
  std::string str() const;
  std::vector<int> values;
};

bool validate_pattern(const GZPattern& p);

class ModuleBasis {
public:
  ModuleBasis() = default;
  ModuleBasis(TopRow top, std::vector<GZPattern> states);

  const TopRow& top() const { return top_; }
  const std::vector<GZPattern>& states() const& { return states_; }
  std::vector<GZPattern> states() && { return std::move(states_); }
  std::size_t size() const { return states_.size(); }
  const GZPattern& operator[](std::size_t i) const { return states_[i]; }
  std::optional<std::size_t> find(const GZPattern& p) const;

private:
  TopRow top_;
  std::vector<GZPattern> states_;
  std::map<GZPattern, std::size_t> index_;
};

ModuleBasis enumerate_basis(const TopRow& top);

std::int64_t generic_dimension(const TopRow& top);

int cartan_exponent(const GZPattern& p, int l);

// Highest-weight pattern: every row is the leading part of the top row.
GZPattern highest_weight_pattern(const TopRow& top);

}  // namespace gz
