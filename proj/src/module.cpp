#include "hv/module.hpp"

#include <sstream>

namespace hv {

FilterSpec filter_full(AlgebraKind kind) {
  FilterSpec f;
  f.d_floor2 = FilterSpec::ALL;
  f.h_floor2 = FilterSpec::ALL;
  f.c1 = f.c2 = true;
  f.c3 = kind == AlgebraKind::TwistedHV;
  f.name = "full";
  return f;
}

FilterSpec filter_vir(AlgebraKind) {
  FilterSpec f;
  f.d_floor2 = FilterSpec::ALL;
  f.c1 = true;
  f.name = "Vir";
  return f;
}

FilterSpec filter_heis(AlgebraKind kind) {
  FilterSpec f;
  f.h_floor2 = FilterSpec::ALL;
  if (kind == AlgebraKind::MirrorHV)
    f.c2 = true;
  else
    f.c3 = true;
  f.name = "heis";
  return f;
}

FilterSpec filter_Dmn(AlgebraKind kind, std::int64_t m, std::int64_t n) {
  FilterSpec f;
  f.d_floor2 = 2 * m;
  f.h_floor2 = kind == AlgebraKind::MirrorHV ? 2 * n + 1 : 2 * n;
  f.c1 = f.c2 = true;
  f.c3 = kind == AlgebraKind::TwistedHV;
  f.name = "D^(" + std::to_string(m) + "," + std::to_string(n) + ")";
  return f;
}

FilterSpec filter_vir_ge(AlgebraKind, std::int64_t m) {
  FilterSpec f;
  f.d_floor2 = 2 * m;
  f.c1 = true;
  f.name = "Vir^(" + std::to_string(m) + ")";
  return f;
}

FilterSpec filter_heis_ge(AlgebraKind kind, std::int64_t n) {
  FilterSpec f;
  f.h_floor2 = kind == AlgebraKind::MirrorHV ? 2 * n + 1 : 2 * n;
  if (kind == AlgebraKind::MirrorHV)
    f.c2 = true;
  else
    f.c3 = true;
  f.name = "h^(" + std::to_string(n) + ")";
  return f;
}

FilterSpec filter_D_minf(AlgebraKind kind, std::int64_t m) {
  FilterSpec f;
  f.d_floor2 = 2 * m;
  f.h_floor2 = FilterSpec::ALL;
  f.c1 = f.c2 = true;
  f.c3 = kind == AlgebraKind::TwistedHV;
  f.name = "D^(" + std::to_string(m) + ",-inf)";
  return f;
}

void Vec::add(const BasisKey& b, const Rat& c) {
  if (is_zero(c)) return;
  auto it = terms.find(b);
  if (it == terms.end()) {
    terms.emplace(b, c);
    return;
  }
  it->second += c;
  if (is_zero(it->second)) terms.erase(it);
}

void Vec::add(const Vec& other, const Rat& scale) {
  for (const auto& [b, c] : other.terms) add(b, Rat(c * scale));
}

Vec Vec::scaled(const Rat& c) const {
  Vec out;
  if (is_zero(c)) return out;
  for (const auto& [b, v] : terms) out.terms.emplace(b, Rat(v * c));
  return out;
}

std::optional<Rat> ModuleHandle::central_value(GenTag) const { return std::nullopt; }

std::string ModuleHandle::describe(const Vec& v) const {
  if (v.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [b, c] : v.terms) {
    if (!first) os << " + ";
    first = false;
    os << "(" << rat_str(c) << ")*" << describe(b);
  }
  return os.str();
}

Vec ModuleHandle::act(const Generator& g, const Vec& v) const {
  require_valid(kind_, g);
  if (!accepts(g))
    throw InvalidGenerator("generator " + gen_token(g) + " outside domain " +
                           domain_.name);
  Vec out;
  for (const auto& [b, c] : v.terms) out.add(act_key(g, b), c);
  return out;
}

Vec ModuleHandle::act(const LieElement& x, const Vec& v) const {
  Vec out;
  for (const auto& [g, c] : x) out.add(act(g, v), c);
  return out;
}

Vec ModuleHandle::act_word(std::span<const Generator> w, const Vec& v) const {
  Vec cur = v;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    if (cur.is_zero()) break;
    cur = act(*it, cur);
  }
  return cur;
}

Rat ModuleHandle::require_level() const {
  auto l = level();
  if (!l || is_zero(*l))
    throw ZeroLevel("operation requires nonzero level on this module");
  return *l;
}

}  // namespace hv
