#include "hv/pbw.hpp"

#include <algorithm>
#include <sstream>

namespace hv {

std::int64_t PBWMonomial::length() const {
  std::int64_t n = 0;
  for (const auto& [g, e] : factors) n += e;
  return n;
}

std::int64_t PBWMonomial::degree2() const {
  std::int64_t d = 0;
  for (const auto& [g, e] : factors) d += g.degree2() * e;
  return d;
}

std::vector<Generator> PBWMonomial::word() const {
  std::vector<Generator> w;
  for (const auto& [g, e] : factors)
    for (std::int64_t i = 0; i < e; ++i) w.push_back(g);
  return w;
}

std::string PBWMonomial::str() const {
  if (factors.empty()) return "1";
  std::string s;
  for (const auto& [g, e] : factors) {
    if (!s.empty()) s += " ";
    s += gen_token(g);
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

void EnvElement::add(const PBWMonomial& m, const Rat& c) {
  if (is_zero(c)) return;
  auto it = terms.find(m);
  if (it == terms.end()) {
    terms.emplace(m, c);
    return;
  }
  it->second += c;
  if (is_zero(it->second)) terms.erase(it);
}

void EnvElement::add(const EnvElement& other, const Rat& scale) {
  for (const auto& [m, c] : other.terms) add(m, Rat(c * scale));
}

EnvElement EnvElement::scaled(const Rat& c) const {
  EnvElement out;
  if (is_zero(c)) return out;
  for (const auto& [m, v] : terms) out.terms.emplace(m, Rat(v * c));
  return out;
}

std::string EnvElement::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms) {
    if (!first) os << " + ";
    first = false;
    os << "(" << rat_str(c) << ")*" << m.str();
  }
  return os.str();
}

bool canonical_less(const Generator& a, const Generator& b) {
  if (a.tag != b.tag) return a.tag < b.tag;
  return a.idx2 < b.idx2;
}

NormalOrderer::NormalOrderer(AlgebraKind kind)
    : kind_(kind), less_(canonical_less) {}

NormalOrderer::NormalOrderer(AlgebraKind kind, Less less)
    : kind_(kind), less_(std::move(less)) {}

const LieElement& NormalOrderer::swap_remainder(const Generator& x,
                                                const Generator& y) const {
  auto key = std::make_pair(x, y);
  auto it = swap_memo_.find(key);
  if (it != swap_memo_.end()) return it->second;
  return swap_memo_.emplace(key, bracket(kind_, x, y)).first->second;
}

EnvElement NormalOrderer::normal_form(const std::vector<Generator>& word) const {
  for (const auto& g : word) require_valid(kind_, g);
  EnvElement out;
  std::vector<std::pair<std::vector<Generator>, Rat>> work;
  work.push_back({word, Rat(1)});
  while (!work.empty()) {
    auto [w, c] = std::move(work.back());
    work.pop_back();
    size_t i = 0;
    bool sorted = true;
    for (; i + 1 < w.size(); ++i) {
      if (less_(w[i + 1], w[i])) {
        sorted = false;
        break;
      }
    }
    if (sorted) {
      PBWMonomial m;
      for (const auto& g : w) {
        if (!m.factors.empty() && m.factors.back().first == g)
          ++m.factors.back().second;
        else
          m.factors.push_back({g, 1});
      }
      out.add(m, c);
      continue;
    }
    Generator x = w[i], y = w[i + 1];
    const LieElement& rem = swap_remainder(x, y);
    // x y -> y x + [x, y]
    std::swap(w[i], w[i + 1]);
    for (const auto& [g, cf] : rem) {
      std::vector<Generator> shorter;
      shorter.reserve(w.size() - 1);
      shorter.insert(shorter.end(), w.begin(), w.begin() + i);
      shorter.push_back(g);
      shorter.insert(shorter.end(), w.begin() + i + 2, w.end());
      work.push_back({std::move(shorter), Rat(c * cf)});
    }
    work.push_back({std::move(w), std::move(c)});
  }
  return out;
}

EnvElement NormalOrderer::one() const {
  EnvElement e;
  e.add(PBWMonomial{}, Rat(1));
  return e;
}

EnvElement NormalOrderer::from_generator(const Generator& g) const {
  require_valid(kind_, g);
  EnvElement e;
  e.add(PBWMonomial{{{g, 1}}}, Rat(1));
  return e;
}

EnvElement NormalOrderer::from_lie(const LieElement& x) const {
  EnvElement e;
  for (const auto& [g, c] : x) {
    require_valid(kind_, g);
    e.add(PBWMonomial{{{g, 1}}}, c);
  }
  return e;
}

EnvElement NormalOrderer::mul(const EnvElement& a, const EnvElement& b) const {
  EnvElement out;
  for (const auto& [ma, ca] : a.terms) {
    std::vector<Generator> wa = ma.word();
    for (const auto& [mb, cb] : b.terms) {
      std::vector<Generator> w = wa;
      std::vector<Generator> wb = mb.word();
      w.insert(w.end(), wb.begin(), wb.end());
      out.add(normal_form(w), Rat(ca * cb));
    }
  }
  return out;
}

EnvElement NormalOrderer::commutator(const EnvElement& a, const EnvElement& b) const {
  EnvElement out = mul(a, b);
  out.add(mul(b, a), Rat(-1));
  return out;
}

std::vector<Generator> parse_word(const std::string& csv) {
  std::vector<Generator> w;
  std::string cur;
  std::istringstream is(csv);
  while (std::getline(is, cur, ',')) {
    // trim spaces
    size_t b = cur.find_first_not_of(" \t");
    size_t e = cur.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    w.push_back(gen_parse(cur.substr(b, e - b + 1)));
  }
  return w;
}

}  // namespace hv
