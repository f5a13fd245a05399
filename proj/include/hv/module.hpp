#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hv/algebra.hpp"
#include "hv/rational.hpp"

namespace hv {

struct ZeroLevel : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ZeroLambda : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WindowExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct KindMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InconsistentCharacter : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ZeroVector : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Named exact scalars for a construction (level, central charge,
// highest weight, the example parameters).
struct Params {
  std::map<std::string, Rat> vals;

  bool has(const std::string& k) const { return vals.count(k) != 0; }
  Rat get(const std::string& k, const Rat& dflt = Rat(0)) const {
    auto it = vals.find(k);
    return it == vals.end() ? dflt : it->second;
  }
  void set(const std::string& k, const Rat& v) { vals[k] = v; }
};

// Up-set subalgebra filters: a d-tail, an h-tail and a set of centrals.
// Covers Vir^(m), h^(n), D^(m,n) and the full algebra; "noneg" floors
// use ALL to take the whole class.
struct FilterSpec {
  static constexpr std::int64_t ALL = std::numeric_limits<std::int64_t>::min();

  std::optional<std::int64_t> d_floor2;  // d_m included iff 2m >= *d_floor2
  std::optional<std::int64_t> h_floor2;  // h_r included iff 2r >= *h_floor2
  bool c1 = false, c2 = false, c3 = false;
  std::string name;

  bool contains(const Generator& g) const {
    switch (g.tag) {
      case GenTag::D:
        return d_floor2 && g.idx2 >= *d_floor2;
      case GenTag::H:
        return h_floor2 && g.idx2 >= *h_floor2;
      case GenTag::C1:
        return c1;
      case GenTag::C2:
        return c2;
      case GenTag::C3:
        return c3;
    }
    return false;
  }
  // a is a subalgebra of b
  bool subset_of(const FilterSpec& b) const {
    if (d_floor2 && (!b.d_floor2 || *d_floor2 < *b.d_floor2)) return false;
    if (h_floor2 && (!b.h_floor2 || *h_floor2 < *b.h_floor2)) return false;
    if ((c1 && !b.c1) || (c2 && !b.c2) || (c3 && !b.c3)) return false;
    return true;
  }
};

FilterSpec filter_full(AlgebraKind kind);
FilterSpec filter_vir(AlgebraKind kind);   // all d + c1
FilterSpec filter_heis(AlgebraKind kind);  // all h + level central
// D^(m,n): d_{m+i}, h_{n+i+1/2} (mirror) / h_{n+i} (twisted), centrals
FilterSpec filter_Dmn(AlgebraKind kind, std::int64_t m, std::int64_t n);
FilterSpec filter_vir_ge(AlgebraKind kind, std::int64_t m);   // Vir^(m)
FilterSpec filter_heis_ge(AlgebraKind kind, std::int64_t n);  // h^(n)
// D^(0,-n) extended by the full negative h tail (the paper's D^(m,-inf))
FilterSpec filter_D_minf(AlgebraKind kind, std::int64_t m);

// Carrier-specific basis index, encoded as a flat integer vector. Keys
// are only meaningful relative to their handle.
struct BasisKey {
  std::vector<std::int64_t> v;
  friend auto operator<=>(const BasisKey&, const BasisKey&) = default;
};

// Finite exact vector over a carrier basis.
struct Vec {
  std::map<BasisKey, Rat> terms;

  bool is_zero() const { return terms.empty(); }
  void add(const BasisKey& b, const Rat& c);
  void add(const Vec& other, const Rat& scale = Rat(1));
  Vec scaled(const Rat& c) const;
  friend bool operator==(const Vec&, const Vec&) = default;
};

inline Vec unit_vec(const BasisKey& b) {
  Vec v;
  v.terms.emplace(b, Rat(1));
  return v;
}

// A concretely realized restricted module. Handles are immutable after
// construction (internal caches fill idempotently) and actions are
// computed exactly; enumeration budgets, not the action, implement
// truncation. Budgets are in doubled weight units: a basis vector of
// total lowering weight w costs 2w, with degree-zero directions
// costing 1 per exponent so every budget is finite.
class ModuleHandle {
 public:
  virtual ~ModuleHandle() = default;

  AlgebraKind kind() const { return kind_; }
  const FilterSpec& domain() const { return domain_; }
  const Params& params() const { return params_; }

  // Core action of a domain generator on a basis vector.
  virtual Vec act_key(const Generator& g, const BasisKey& b) const = 0;

  // Scalar by which a central generator acts, when assigned.
  virtual std::optional<Rat> central_value(GenTag tag) const;

  // All basis keys of cost <= budget2, sorted (deterministic).
  virtual std::vector<BasisKey> enumerate2(std::int64_t budget2) const = 0;
  virtual std::int64_t size2(const BasisKey& b) const = 0;

  // Doubled lowering weight; meaningful when graded().
  virtual bool graded() const = 0;
  virtual std::int64_t weight2(const BasisKey& b) const = 0;

  // Bound K with: every generator of doubled degree > K kills b.
  virtual std::int64_t annihilation_bound2(const BasisKey& b) const = 0;

  virtual std::string describe(const BasisKey& b) const = 0;
  std::string describe(const Vec& v) const;

  bool accepts(const Generator& g) const { return domain_.contains(g); }

  Vec act(const Generator& g, const Vec& v) const;
  Vec act(const LieElement& x, const Vec& v) const;
  // Word applied right to left, as a product in U(g).
  Vec act_word(std::span<const Generator> w, const Vec& v) const;

  // Level central of the kind (c2 mirror, c3 twisted).
  GenTag level_tag() const {
    return kind_ == AlgebraKind::MirrorHV ? GenTag::C2 : GenTag::C3;
  }
  std::optional<Rat> level() const { return central_value(level_tag()); }
  Rat require_level() const;

 protected:
  ModuleHandle(AlgebraKind kind, FilterSpec domain, Params params)
      : kind_(kind), domain_(std::move(domain)), params_(std::move(params)) {}

  AlgebraKind kind_;
  FilterSpec domain_;
  Params params_;
};

using ModulePtr = std::shared_ptr<const ModuleHandle>;

}  // namespace hv
