#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace hv {

// Element of the exponent monoid M: a finitely supported vector of
// naturals indexed by positions 1, 2, 3, ...
struct ExpVec {
  // position -> exponent, no zero entries stored
  std::map<std::int64_t, std::int64_t> entries;

  bool is_zero() const { return entries.empty(); }
  std::int64_t at(std::int64_t pos) const {
    auto it = entries.find(pos);
    return it == entries.end() ? 0 : it->second;
  }
  void bump(std::int64_t pos, std::int64_t by);

  friend bool operator==(const ExpVec&, const ExpVec&) = default;
  // Structural order, used only as a map key; the mathematical orders
  // are cmp_revlex / cmp_pair below.
  friend auto operator<=>(const ExpVec& a, const ExpVec& b) {
    return a.entries <=> b.entries;
  }

  std::string str() const;
};

inline ExpVec eps(std::int64_t pos) {
  ExpVec e;
  e.entries[pos] = 1;
  return e;
}

// w(i) = sum_p p * i_p
std::int64_t weight(const ExpVec& i);

ExpVec ev_add(const ExpVec& a, const ExpVec& b);
// Partial: M is a monoid, not a group. Empty when any entry would go
// negative.
std::optional<ExpVec> ev_sub(const ExpVec& a, const ExpVec& b);

// Reverse lexicographic order: j < i iff at the first position where
// they differ (scanning positions 1, 2, ...) j has the smaller entry.
std::strong_ordering cmp_revlex(const ExpVec& j, const ExpVec& i);

// Total order on M x M used by deg: total weight first, then the
// weight of the second component, then the second component by revlex,
// then the first. (See probes for the degree functions built on it.)
std::strong_ordering cmp_pair(const std::pair<ExpVec, ExpVec>& a,
                              const std::pair<ExpVec, ExpVec>& b);

// (i,j) <' (k,l)  iff  (j,i) < (l,k)
std::strong_ordering cmp_pair_prime(const std::pair<ExpVec, ExpVec>& a,
                                    const std::pair<ExpVec, ExpVec>& b);

}  // namespace hv
