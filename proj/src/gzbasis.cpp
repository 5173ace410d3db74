#include "gzroots/gzbasis.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "gzroots/errors.hpp"

namespace gz {

GZPattern::GZPattern(std::vector<std::vector<int>> rows) : rows_(std::move(rows)) {
  const std::size_t n = rows_.size();
  for (std::size_t k = 0; k < n; ++k)
    if (rows_[k].size() != n - k)
      throw Error(ErrorKind::InvalidArgument, "pattern rows must have lengths N, N-1, ..., 1");
}

std::string GZPattern::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    if (k) os << ',';
    os << '[';
    for (std::size_t i = 0; i < rows_[k].size(); ++i) {
      if (i) os << ',';
      os << rows_[k][i];
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

GZPattern GZPattern::parse(std::string_view text) {
  std::vector<std::vector<int>> rows;
  int depth = 0;
  std::size_t pos = 0;
  auto fail = [&]() { throw Error(ErrorKind::Format, "cannot parse pattern '" + std::string(text) + "'"); };
  while (pos < text.size()) {
    char c = text[pos];
    if (c == '[') {
      ++depth;
      if (depth == 2) rows.emplace_back();
      if (depth > 2) fail();
      ++pos;
    } else if (c == ']') {
      --depth;
      if (depth < 0) fail();
      ++pos;
    } else if (c == ',' || c == ' ') {
      ++pos;
    } else {
      if (depth != 2) fail();
      int v = 0;
      auto res = std::from_chars(text.data() + pos, text.data() + text.size(), v);
      if (res.ec != std::errc()) fail();
      rows.back().push_back(v);
      pos = static_cast<std::size_t>(res.ptr - text.data());
    }
  }
  if (depth != 0 || rows.empty()) fail();
  return GZPattern(std::move(rows));
}

bool TopRow::strictly_decreasing() const {
  if (values.empty()) return false;
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    if (values[i] <= values[i + 1]) return false;
  return true;
}

std::string TopRow::str() const {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(values[i]);
  }
  return s;
}

bool validate_pattern(const GZPattern& p) {
  const int n = p.rank();
  if (n == 0) return false;
  for (int j = 1; j < n; ++j)
    for (int i = 1; i <= j; ++i)
      if (!(p.at(i, j + 1) >= p.at(i, j) && p.at(i, j) > p.at(i + 1, j + 1))) return false;
  return true;
}

ModuleBasis::ModuleBasis(TopRow top, std::vector<GZPattern> states)
    : top_(std::move(top)), states_(std::move(states)) {
  for (std::size_t k = 0; k < states_.size(); ++k) index_.emplace(states_[k], k);
}

std::optional<std::size_t> ModuleBasis::find(const GZPattern& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

void fill_rows(std::vector<std::vector<int>>& rows, std::vector<GZPattern>& out) {
  const std::vector<int> above = rows.back();
  const std::size_t len = above.size() - 1;
  if (len == 0) {
    out.emplace_back(rows);
    return;
  }
  std::vector<int> cur(len);
  for (std::size_t i = 0; i < len; ++i) cur[i] = above[i + 1] + 1;
  // odometer over p_{i+1,j+1} < x_i <= p_{i,j+1}, last index fastest
  while (true) {
    rows.push_back(cur);
    fill_rows(rows, out);
    rows.pop_back();
    std::size_t k = len;
    while (k > 0) {
      --k;
      if (cur[k] < above[k]) {
        ++cur[k];
        for (std::size_t t = k + 1; t < len; ++t) cur[t] = above[t + 1] + 1;
        break;
      }
      if (k == 0) return;
    }
  }
}

}  // namespace

ModuleBasis enumerate_basis(const TopRow& top) {
  if (!top.strictly_decreasing())
    throw Error(ErrorKind::EmptyModule, "top row " + top.str() + " is not strictly decreasing");
  std::vector<GZPattern> states;
  std::vector<std::vector<int>> rows{top.values};
  fill_rows(rows, states);
  return ModuleBasis(top, std::move(states));
}

static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::InvalidArgument, "dimension overflows 64 bits");
  return r;
}

std::int64_t generic_dimension(const TopRow& top) {
  const auto& p = top.values;
  const int n = top.rank();
  std::int64_t num = 1, den = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) num = checked_mul(num, p[i] - p[j]);
  for (int i = 1; i < n; ++i)
    for (int k = 2; k <= n - i; ++k) den = checked_mul(den, k);
  if (num < 0) return 0;
  return num / den;
}

int cartan_exponent(const GZPattern& p, int l) {
  int s = 0;
  for (int i = 1; i <= l; ++i) s += 2 * p.at(i, l);
  for (int i = 1; i <= l + 1; ++i) s -= p.at(i, l + 1);
  for (int i = 1; i <= l - 1; ++i) s -= p.at(i, l - 1);
  return s - 1;
}

GZPattern highest_weight_pattern(const TopRow& top) {
  std::vector<std::vector<int>> rows;
  for (int len = top.rank(); len >= 1; --len)
    rows.emplace_back(top.values.begin(), top.values.begin() + len);
  return GZPattern(std::move(rows));
}

}  // namespace gz
