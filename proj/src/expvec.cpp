#include "hv/expvec.hpp"

#include <algorithm>

namespace hv {

void ExpVec::bump(std::int64_t pos, std::int64_t by) {
  if (by == 0) return;
  auto it = entries.find(pos);
  if (it == entries.end()) {
    entries.emplace(pos, by);
    return;
  }
  it->second += by;
  if (it->second == 0) entries.erase(it);
}

std::string ExpVec::str() const {
  if (entries.empty()) return "0";
  std::string s;
  for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
    if (!s.empty()) s += "+";
    if (it->second != 1) s += std::to_string(it->second) + "*";
    s += "e" + std::to_string(it->first);
  }
  return s;
}

std::int64_t weight(const ExpVec& i) {
  std::int64_t w = 0;
  for (const auto& [pos, exp] : i.entries) w += pos * exp;
  return w;
}

ExpVec ev_add(const ExpVec& a, const ExpVec& b) {
  ExpVec out = a;
  for (const auto& [pos, exp] : b.entries) out.bump(pos, exp);
  return out;
}

std::optional<ExpVec> ev_sub(const ExpVec& a, const ExpVec& b) {
  ExpVec out = a;
  for (const auto& [pos, exp] : b.entries) {
    if (out.at(pos) < exp) return std::nullopt;
    out.bump(pos, -exp);
  }
  return out;
}

std::strong_ordering cmp_revlex(const ExpVec& j, const ExpVec& i) {
  auto jt = j.entries.begin(), it = i.entries.begin();
  while (jt != j.entries.end() || it != i.entries.end()) {
    std::int64_t jp = jt == j.entries.end() ? INT64_MAX : jt->first;
    std::int64_t ip = it == i.entries.end() ? INT64_MAX : it->first;
    if (jp < ip) return jt->second <=> 0;       // i has 0 at position jp
    if (ip < jp) return 0 <=> it->second;       // j has 0 at position ip
    if (jt->second != it->second) return jt->second <=> it->second;
    ++jt;
    ++it;
  }
  return std::strong_ordering::equal;
}

std::strong_ordering cmp_pair(const std::pair<ExpVec, ExpVec>& a,
                              const std::pair<ExpVec, ExpVec>& b) {
  std::int64_t wa = weight(a.first) + weight(a.second);
  std::int64_t wb = weight(b.first) + weight(b.second);
  if (wa != wb) return wa <=> wb;
  std::int64_t wa2 = weight(a.second), wb2 = weight(b.second);
  if (wa2 != wb2) return wa2 <=> wb2;
  if (auto c = cmp_revlex(a.second, b.second); c != 0) return c;
  return cmp_revlex(a.first, b.first);
}

std::strong_ordering cmp_pair_prime(const std::pair<ExpVec, ExpVec>& a,
                                    const std::pair<ExpVec, ExpVec>& b) {
  return cmp_pair({a.second, a.first}, {b.second, b.first});
}

}  // namespace hv
