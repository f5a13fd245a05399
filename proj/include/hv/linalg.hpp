#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "hv/rational.hpp"

namespace hv {

// Sparse rows of exact rationals.
struct RatMatrix {
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  std::vector<std::map<std::int64_t, Rat>> row_data;

  RatMatrix() = default;
  RatMatrix(std::int64_t r, std::int64_t c) : rows(r), cols(c), row_data(r) {}

  void set(std::int64_t r, std::int64_t c, const Rat& v) {
    if (is_zero(v))
      row_data[r].erase(c);
    else
      row_data[r][c] = v;
  }
  Rat get(std::int64_t r, std::int64_t c) const {
    auto it = row_data[r].find(c);
    return it == row_data[r].end() ? Rat(0) : it->second;
  }
  void append_row(const std::map<std::int64_t, Rat>& row) {
    row_data.push_back(row);
    ++rows;
  }
};

// Exact basis of the null space {x : A x = 0}, as dense vectors of
// length cols. rank(A) + result.size() == cols.
std::vector<std::vector<Rat>> kernel(const RatMatrix& a);

std::int64_t rank(const RatMatrix& a);

}  // namespace hv
