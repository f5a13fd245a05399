#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hv/rational.hpp"

namespace hv {

// The two algebra variants. Subalgebras (Vir, the Heisenberg halves,
// the D^(m,n) family) are generator filters, not separate kinds.
enum class AlgebraKind { MirrorHV, TwistedHV };

inline const char* kind_name(AlgebraKind k) {
  return k == AlgebraKind::MirrorHV ? "mirror" : "twisted";
}

struct InvalidGenerator : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Class rank fixes the canonical PBW factor order: centrals < H < D.
enum class GenTag : std::uint8_t { C1 = 0, C2 = 1, C3 = 2, H = 3, D = 4 };

// Basis element of the Lie algebra. Indices are stored doubled so the
// half-integer Heisenberg modes of the mirror algebra stay integral:
// d_m has idx2 = 2m, h_r has idx2 = 2r, centrals have idx2 = 0.
struct Generator {
  GenTag tag = GenTag::C1;
  std::int64_t idx2 = 0;

  friend auto operator<=>(const Generator&, const Generator&) = default;

  // Doubled degree in the (half-)integer grading: deg(d_m) = m,
  // deg(h_r) = r, deg(central) = 0.
  std::int64_t degree2() const {
    return (tag == GenTag::H || tag == GenTag::D) ? idx2 : 0;
  }
  bool is_central() const { return tag != GenTag::H && tag != GenTag::D; }
};

inline Generator gen_d(std::int64_t m) { return {GenTag::D, 2 * m}; }
// h with doubled index r2 (odd for mirror, even for twisted).
inline Generator gen_h2(std::int64_t r2) { return {GenTag::H, r2}; }
inline Generator gen_c1() { return {GenTag::C1, 0}; }
inline Generator gen_c2() { return {GenTag::C2, 0}; }
inline Generator gen_c3() { return {GenTag::C3, 0}; }

bool valid_for(AlgebraKind kind, const Generator& g);
void require_valid(AlgebraKind kind, const Generator& g);

// Text form used by the CLI and JSON layers: "d:<m>", "h:<r>" or
// "h:<odd>/2", "c1", "c2", "c3".
std::string gen_token(const Generator& g);
Generator gen_parse(const std::string& token);

// Finite rational combination of generators. No zero coefficients are
// stored; map iteration order makes the form canonical.
using LieElement = std::map<Generator, Rat>;

void add_term(LieElement& e, const Generator& g, const Rat& c);
LieElement lie_scale(const LieElement& e, const Rat& c);
LieElement lie_add(const LieElement& a, const LieElement& b);

// [x, y] from the defining relations of the chosen algebra.
LieElement bracket(AlgebraKind kind, const Generator& x, const Generator& y);

// Bilinear extension of bracket.
LieElement bracket_lin(AlgebraKind kind, const LieElement& x, const LieElement& y);

// [x,[y,z]] + [y,[z,x]] + [z,[x,y]]; zero for a Lie algebra.
LieElement jacobi_defect(AlgebraKind kind, const Generator& x, const Generator& y,
                         const Generator& z);

// All generators of the given kind with |degree| <= max_deg (centrals
// included once), in canonical order.
std::vector<Generator> generators_up_to(AlgebraKind kind, std::int64_t max_deg);

}  // namespace hv
