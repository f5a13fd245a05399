#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hv/algebra.hpp"
#include "hv/rational.hpp"

namespace hv {

// Ordered monomial in the enveloping algebra: factors strictly
// increasing in the orderer's generator order, exponents >= 1.
struct PBWMonomial {
  std::vector<std::pair<Generator, std::int64_t>> factors;

  friend auto operator<=>(const PBWMonomial&, const PBWMonomial&) = default;

  bool is_unit() const { return factors.empty(); }
  std::int64_t length() const;
  std::int64_t degree2() const;
  std::vector<Generator> word() const;
  std::string str() const;
};

// Sparse rational combination of PBW monomials. All monomials must come
// from the same NormalOrderer; no zero coefficients stored.
struct EnvElement {
  std::map<PBWMonomial, Rat> terms;

  friend bool operator==(const EnvElement&, const EnvElement&) = default;

  bool is_zero() const { return terms.empty(); }
  void add(const PBWMonomial& m, const Rat& c);
  void add(const EnvElement& other, const Rat& scale = Rat(1));
  EnvElement scaled(const Rat& c) const;
  std::string str() const;
};

// Canonical generator order: class rank (centrals < H < D) major,
// index ascending within a class. On U(D^-) this reproduces the
// h^i d^k basis shape with annihilating modes rightmost.
bool canonical_less(const Generator& a, const Generator& b);

// Rewrites words of generators into the PBW basis determined by a total
// order on generators. The default is the canonical order; induced
// modules use a custom order that ranks the inducing subalgebra last.
class NormalOrderer {
 public:
  using Less = std::function<bool(const Generator&, const Generator&)>;

  explicit NormalOrderer(AlgebraKind kind);
  NormalOrderer(AlgebraKind kind, Less less);

  AlgebraKind kind() const { return kind_; }
  bool less(const Generator& a, const Generator& b) const { return less_(a, b); }

  // The word as an element of U(g), monomials ordered. Idempotent on
  // ordered words; termination: each swap removes an inversion and
  // commutator remainders are strictly shorter.
  EnvElement normal_form(const std::vector<Generator>& word) const;

  EnvElement one() const;
  EnvElement from_generator(const Generator& g) const;
  EnvElement from_lie(const LieElement& x) const;

  EnvElement mul(const EnvElement& a, const EnvElement& b) const;
  // normal_form(a b) - normal_form(b a)
  EnvElement commutator(const EnvElement& a, const EnvElement& b) const;

 private:
  AlgebraKind kind_;
  Less less_;
  // Two-generator swap remainders [x,y]; filled idempotently.
  mutable std::map<std::pair<Generator, Generator>, LieElement> swap_memo_;

  const LieElement& swap_remainder(const Generator& x, const Generator& y) const;
};

// Comma-separated generator tokens, e.g. "h:1/2,h:-1/2".
std::vector<Generator> parse_word(const std::string& csv);

}  // namespace hv
