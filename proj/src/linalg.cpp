#include "hv/linalg.hpp"

#include <algorithm>

namespace hv {

namespace {

// Reduced row echelon form of sparse rows; returns pivot columns and
// leaves the reduced rows in place (zero rows dropped).
struct Echelon {
  std::vector<std::map<std::int64_t, Rat>> rows;
  std::vector<std::int64_t> pivot_col;  // per reduced row, ascending
};

Echelon reduce(const RatMatrix& a) {
  Echelon ech;
  // column -> index of reduced row pivoting there
  std::map<std::int64_t, std::size_t> pivot_of;
  for (const auto& src : a.row_data) {
    std::map<std::int64_t, Rat> row = src;
    while (!row.empty()) {
      std::int64_t lead = row.begin()->first;
      auto hit = pivot_of.find(lead);
      if (hit == pivot_of.end()) break;
      const auto& prow = ech.rows[hit->second];
      Rat factor = row.begin()->second;  // pivot rows are normalized to 1
      for (const auto& [c, v] : prow) {
        auto it = row.find(c);
        Rat nv = (it == row.end() ? Rat(0) : it->second) - factor * v;
        if (is_zero(nv))
          row.erase(c);
        else
          row[c] = nv;
      }
    }
    if (row.empty()) continue;
    std::int64_t lead = row.begin()->first;
    Rat inv = Rat(1) / row.begin()->second;
    for (auto& [c, v] : row) v *= inv;
    // eliminate this column from existing rows (full reduction)
    for (std::size_t ri = 0; ri < ech.rows.size(); ++ri) {
      auto& r = ech.rows[ri];
      auto it = r.find(lead);
      if (it == r.end()) continue;
      Rat f = it->second;
      for (const auto& [c, v] : row) {
        auto jt = r.find(c);
        Rat nv = (jt == r.end() ? Rat(0) : jt->second) - f * v;
        if (is_zero(nv))
          r.erase(c);
        else
          r[c] = nv;
      }
    }
    pivot_of[lead] = ech.rows.size();
    ech.rows.push_back(std::move(row));
  }
  ech.pivot_col.resize(ech.rows.size());
  for (const auto& [c, ri] : pivot_of) ech.pivot_col[ri] = c;
  return ech;
}

}  // namespace

std::vector<std::vector<Rat>> kernel(const RatMatrix& a) {
  Echelon ech = reduce(a);
  std::vector<bool> is_pivot(a.cols, false);
  for (auto c : ech.pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (std::int64_t free = 0; free < a.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rat> x(a.cols, Rat(0));
    x[free] = Rat(1);
    for (std::size_t ri = 0; ri < ech.rows.size(); ++ri) {
      auto it = ech.rows[ri].find(free);
      if (it != ech.rows[ri].end()) x[ech.pivot_col[ri]] = -it->second;
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

std::int64_t rank(const RatMatrix& a) {
  return static_cast<std::int64_t>(reduce(a).rows.size());
}

}  // namespace hv
