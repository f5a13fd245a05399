#include "hv/algebra.hpp"

#include <cstdlib>

namespace hv {

bool valid_for(AlgebraKind kind, const Generator& g) {
  switch (g.tag) {
    case GenTag::D:
      return g.idx2 % 2 == 0;
    case GenTag::H:
      // Mirror modes live in 1/2 + Z, twisted modes in Z.
      return kind == AlgebraKind::MirrorHV ? (g.idx2 % 2 != 0) : (g.idx2 % 2 == 0);
    case GenTag::C1:
    case GenTag::C2:
      return g.idx2 == 0;
    case GenTag::C3:
      return kind == AlgebraKind::TwistedHV && g.idx2 == 0;
  }
  return false;
}

void require_valid(AlgebraKind kind, const Generator& g) {
  if (!valid_for(kind, g))
    throw InvalidGenerator("generator " + gen_token(g) + " invalid for " +
                           kind_name(kind) + " algebra");
}

std::string gen_token(const Generator& g) {
  switch (g.tag) {
    case GenTag::C1:
      return "c1";
    case GenTag::C2:
      return "c2";
    case GenTag::C3:
      return "c3";
    case GenTag::D:
      return "d:" + std::to_string(g.idx2 / 2);
    case GenTag::H:
      if (g.idx2 % 2 == 0) return "h:" + std::to_string(g.idx2 / 2);
      return "h:" + std::to_string(g.idx2) + "/2";
  }
  return "?";
}

Generator gen_parse(const std::string& token) {
  auto bad = [&]() -> Generator {
    throw InvalidGenerator("bad generator token '" + token + "'");
  };
  if (token == "c1") return gen_c1();
  if (token == "c2") return gen_c2();
  if (token == "c3") return gen_c3();
  if (token.size() < 3 || token[1] != ':') return bad();
  char cls = token[0];
  std::string body = token.substr(2);
  bool half = false;
  if (body.size() > 2 && body.substr(body.size() - 2) == "/2") {
    half = true;
    body = body.substr(0, body.size() - 2);
  }
  if (body.empty() || (body == "-")) return bad();
  for (size_t i = 0; i < body.size(); ++i)
    if (!(std::isdigit(static_cast<unsigned char>(body[i])) || (i == 0 && body[i] == '-')))
      return bad();
  std::int64_t v = std::strtoll(body.c_str(), nullptr, 10);
  std::int64_t idx2 = half ? v : 2 * v;
  if (half && idx2 % 2 == 0) return bad();
  if (cls == 'd') {
    if (half) return bad();
    return gen_d(v);
  }
  if (cls == 'h') return gen_h2(idx2);
  return bad();
}

void add_term(LieElement& e, const Generator& g, const Rat& c) {
  if (is_zero(c)) return;
  auto it = e.find(g);
  if (it == e.end()) {
    e.emplace(g, c);
    return;
  }
  it->second += c;
  if (is_zero(it->second)) e.erase(it);
}

LieElement lie_scale(const LieElement& e, const Rat& c) {
  LieElement out;
  if (is_zero(c)) return out;
  for (const auto& [g, v] : e) out.emplace(g, Rat(v * c));
  return out;
}

LieElement lie_add(const LieElement& a, const LieElement& b) {
  LieElement out = a;
  for (const auto& [g, v] : b) add_term(out, g, v);
  return out;
}

LieElement bracket(AlgebraKind kind, const Generator& x, const Generator& y) {
  require_valid(kind, x);
  require_valid(kind, y);
  LieElement out;
  if (x.is_central() || y.is_central()) return out;

  if (x.tag == GenTag::D && y.tag == GenTag::D) {
    // [d_m, d_n] = (m-n) d_{m+n} + delta_{m+n,0} (m^3-m)/12 c1
    std::int64_t m = x.idx2 / 2, n = y.idx2 / 2;
    add_term(out, gen_d(m + n), rat(m - n));
    if (m + n == 0) add_term(out, gen_c1(), rat(m * m * m - m, 12));
    return out;
  }
  if (x.tag == GenTag::D && y.tag == GenTag::H) {
    // [d_m, h_r] = -r h_{m+r}  (+ delta_{m+r,0} (m^2+m) cbar2, twisted only)
    std::int64_t m = x.idx2 / 2, r2 = y.idx2;
    add_term(out, gen_h2(2 * m + r2), rat(-r2, 2));
    if (kind == AlgebraKind::TwistedHV && 2 * m + r2 == 0)
      add_term(out, gen_c2(), rat(m * m + m));
    return out;
  }
  if (x.tag == GenTag::H && y.tag == GenTag::D) {
    return lie_scale(bracket(kind, y, x), rat(-1));
  }
  // [h_r, h_s] = r delta_{r+s,0} c2  (level central: c2 mirror, c3 twisted)
  std::int64_t r2 = x.idx2, s2 = y.idx2;
  if (r2 + s2 == 0) {
    Generator level = kind == AlgebraKind::MirrorHV ? gen_c2() : gen_c3();
    add_term(out, level, rat(r2, 2));
  }
  return out;
}

LieElement bracket_lin(AlgebraKind kind, const LieElement& x, const LieElement& y) {
  LieElement out;
  for (const auto& [gx, cx] : x)
    for (const auto& [gy, cy] : y) {
      LieElement b = bracket(kind, gx, gy);
      for (const auto& [g, c] : b) add_term(out, g, Rat(c * cx * cy));
    }
  return out;
}

LieElement jacobi_defect(AlgebraKind kind, const Generator& x, const Generator& y,
                         const Generator& z) {
  LieElement ex{{x, rat(1)}}, ey{{y, rat(1)}}, ez{{z, rat(1)}};
  LieElement out = bracket_lin(kind, ex, bracket_lin(kind, ey, ez));
  out = lie_add(out, bracket_lin(kind, ey, bracket_lin(kind, ez, ex)));
  out = lie_add(out, bracket_lin(kind, ez, bracket_lin(kind, ex, ey)));
  return out;
}

std::vector<Generator> generators_up_to(AlgebraKind kind, std::int64_t max_deg) {
  std::vector<Generator> out;
  out.push_back(gen_c1());
  out.push_back(gen_c2());
  if (kind == AlgebraKind::TwistedHV) out.push_back(gen_c3());
  for (std::int64_t r2 = -2 * max_deg; r2 <= 2 * max_deg; ++r2) {
    Generator h = gen_h2(r2);
    if (valid_for(kind, h)) out.push_back(h);
  }
  for (std::int64_t m = -max_deg; m <= max_deg; ++m) out.push_back(gen_d(m));
  return out;
}

}  // namespace hv
