#pragma once

#include <optional>
#include <tuple>

#include "hv/expvec.hpp"
#include "hv/module.hpp"
#include "hv/pbw.hpp"

namespace hv {

// ---------------------------------------------------------------------------
// Fock modules: basis h^i v over the negative Heisenberg tail. Mirror
// slot p holds h_{-p+1/2}, twisted slot p holds h_{-p}; the twisted
// carrier optionally carries an h_0 eigenvalue mu.
class FockModule : public ModuleHandle {
 public:
  FockModule(AlgebraKind kind, const Rat& ell, std::optional<Rat> mu);

  Vec act_key(const Generator& g, const BasisKey& b) const override;
  std::optional<Rat> central_value(GenTag tag) const override;
  std::vector<BasisKey> enumerate2(std::int64_t budget2) const override;
  std::int64_t size2(const BasisKey& b) const override;
  bool graded() const override { return true; }
  std::int64_t weight2(const BasisKey& b) const override { return size2(b); }
  std::int64_t annihilation_bound2(const BasisKey& b) const override;
  std::string describe(const BasisKey& b) const override;

  static BasisKey vacuum() { return {}; }

 private:
  Rat ell_;
  std::optional<Rat> mu_;
  std::int64_t slot_step2_;  // doubled degree of slot p = p * slot_step2_ - offs
};

// ---------------------------------------------------------------------------
// Example 7.1 polynomial carrier: C[x_1..x_n] with shift/scale actions,
// an h^(-n)-module of level ell.
class PolyModule : public ModuleHandle {
 public:
  PolyModule(std::int64_t n, const Rat& ell, std::vector<Rat> lambda,
             std::vector<Rat> a);

  Vec act_key(const Generator& g, const BasisKey& b) const override;
  std::optional<Rat> central_value(GenTag tag) const override;
  std::vector<BasisKey> enumerate2(std::int64_t budget2) const override;
  std::int64_t size2(const BasisKey& b) const override;
  bool graded() const override { return false; }
  std::int64_t weight2(const BasisKey&) const override { return 0; }
  std::int64_t annihilation_bound2(const BasisKey&) const override {
    return 2 * n_ - 1;
  }
  std::string describe(const BasisKey& b) const override;

  static BasisKey one(std::int64_t n) { return BasisKey{std::vector<std::int64_t>(n, 0)}; }

 private:
  std::int64_t n_;
  Rat ell_;
  std::vector<Rat> lambda_, a_;
};

// ---------------------------------------------------------------------------
// Example 7.4 carrier: basis f_k = t^k/(t-1) on a bounded index window,
// a D^(0,0)-module. Mirror: d_0 = -(1/2)h, h_{1/2} = e; twisted:
// d_0 = h, h_1 = e, h_0 = z'.
class LaurentModule : public ModuleHandle {
 public:
  LaurentModule(AlgebraKind kind, Params scalars, std::int64_t window);

  Vec act_key(const Generator& g, const BasisKey& b) const override;
  std::optional<Rat> central_value(GenTag tag) const override;
  std::vector<BasisKey> enumerate2(std::int64_t budget2) const override;
  std::int64_t size2(const BasisKey&) const override { return 0; }
  bool graded() const override { return false; }
  std::int64_t weight2(const BasisKey&) const override { return 0; }
  std::int64_t annihilation_bound2(const BasisKey&) const override {
    return kind_ == AlgebraKind::MirrorHV ? 1 : 2;
  }
  std::string describe(const BasisKey& b) const override;

  static BasisKey f(std::int64_t k) { return BasisKey{{k}}; }

 private:
  std::int64_t window_;
  // h f_k = (k-1) f_k - f_{k-1} - f_{k-2},  e f_k = f_{k+1}
  Vec apply_h(std::int64_t k) const;
  Vec apply_e(std::int64_t k) const;
};

// ---------------------------------------------------------------------------
// One-dimensional module C v0 over an inner subalgebra, defined by a
// character chi (unlisted inner generators act as zero). Consistency
// chi([x,y]) = 0 is checked on construction over the index range
// touched by chi plus a safety margin.
class CharModule : public ModuleHandle {
 public:
  CharModule(AlgebraKind kind, FilterSpec inner, std::map<Generator, Rat> chi);

  Vec act_key(const Generator& g, const BasisKey& b) const override;
  std::optional<Rat> central_value(GenTag tag) const override;
  std::vector<BasisKey> enumerate2(std::int64_t) const override {
    return {BasisKey{}};
  }
  std::int64_t size2(const BasisKey&) const override { return 0; }
  bool graded() const override { return graded_; }
  std::int64_t weight2(const BasisKey&) const override { return 0; }
  std::int64_t annihilation_bound2(const BasisKey&) const override {
    return ann_bound2_;
  }
  std::string describe(const BasisKey&) const override { return "v0"; }

  Rat chi(const Generator& g) const;

 private:
  std::map<Generator, Rat> chi_;
  bool graded_ = true;
  std::int64_t ann_bound2_ = 0;
};

// ---------------------------------------------------------------------------
// Induced module U(outer) (x)_{U(inner)} base, with inner the base's
// domain. Basis: monomials in the complement generators (outer minus
// inner) applied to base vectors; the action rewrites words in U(g)
// with the complement ranked before the inner subalgebra and delegates
// inner suffixes to the base.
class InducedModule : public ModuleHandle {
 public:
  InducedModule(ModulePtr base, FilterSpec outer, std::int64_t base_budget2);

  Vec act_key(const Generator& g, const BasisKey& b) const override;
  std::optional<Rat> central_value(GenTag tag) const override {
    return base_->central_value(tag);
  }
  std::vector<BasisKey> enumerate2(std::int64_t budget2) const override;
  std::int64_t size2(const BasisKey& b) const override;
  bool graded() const override { return base_->graded(); }
  std::int64_t weight2(const BasisKey& b) const override;
  std::int64_t annihilation_bound2(const BasisKey& b) const override;
  std::string describe(const BasisKey& b) const override;

  const ModulePtr& base() const { return base_; }

  // (i, k, base key) with slot p of i holding h_{inner h floor - p} and
  // slot q of k holding d_{inner d floor - q}; requires the full outer
  // algebra so the slot families are the whole negative tails.
  std::tuple<ExpVec, ExpVec, BasisKey> split_key(const BasisKey& b) const;
  BasisKey make_key(const ExpVec& i, const ExpVec& k, const BasisKey& base) const;
  BasisKey embed_base(const BasisKey& base_key) const {
    return make_key({}, {}, base_key);
  }

 private:
  ModulePtr base_;
  std::int64_t base_budget2_;
  NormalOrderer orderer_;
  mutable std::map<std::pair<Generator, BasisKey>, Vec> act_cache_;

  struct Decoded {
    std::vector<std::pair<std::int64_t, std::int64_t>> h;  // (idx2, exp) asc
    std::vector<std::pair<std::int64_t, std::int64_t>> d;
    BasisKey base;
  };
  Decoded decode(const BasisKey& b) const;
  static BasisKey encode(const Decoded& d);
  std::vector<Generator> complement_gens(std::int64_t budget2) const;
};

// ---------------------------------------------------------------------------
// A Vir-module viewed as a module for the full algebra with the
// Heisenberg part (and the extra centrals) acting as zero.
class VirTrivialModule : public ModuleHandle {
 public:
  VirTrivialModule(AlgebraKind kind, ModulePtr vir_base);

  Vec act_key(const Generator& g, const BasisKey& b) const override;
  std::optional<Rat> central_value(GenTag tag) const override;
  std::vector<BasisKey> enumerate2(std::int64_t budget2) const override {
    return base_->enumerate2(budget2);
  }
  std::int64_t size2(const BasisKey& b) const override { return base_->size2(b); }
  bool graded() const override { return base_->graded(); }
  std::int64_t weight2(const BasisKey& b) const override {
    return base_->weight2(b);
  }
  std::int64_t annihilation_bound2(const BasisKey& b) const override {
    return base_->annihilation_bound2(b);
  }
  std::string describe(const BasisKey& b) const override {
    return base_->describe(b);
  }
  const ModulePtr& base() const { return base_; }

 private:
  ModulePtr base_;
};

// ---------------------------------------------------------------------------
// Heisenberg module promoted to the full algebra by the Sugawara
// operators: d_n acts as L_n (mirror) or Lbar_n (twisted, with the
// linear z-term). Central assignments: mirror c1 -> 1, c2 -> ell;
// twisted c1 -> 1 - 12 z^2/ell, c2 -> z, c3 -> ell.
class SugawaraDressedModule : public ModuleHandle {
 public:
  SugawaraDressedModule(ModulePtr heis_base, Rat z);

  Vec act_key(const Generator& g, const BasisKey& b) const override;
  std::optional<Rat> central_value(GenTag tag) const override;
  std::vector<BasisKey> enumerate2(std::int64_t budget2) const override {
    return base_->enumerate2(budget2);
  }
  std::int64_t size2(const BasisKey& b) const override { return base_->size2(b); }
  bool graded() const override { return base_->graded(); }
  std::int64_t weight2(const BasisKey& b) const override {
    return base_->weight2(b);
  }
  std::int64_t annihilation_bound2(const BasisKey& b) const override;
  std::string describe(const BasisKey& b) const override {
    return base_->describe(b);
  }
  const ModulePtr& base() const { return base_; }

 private:
  ModulePtr base_;
  Rat ell_, z_;
};

// ---------------------------------------------------------------------------
// Tensor product of a Vir-trivially-extended module and a Heisenberg
// module with a d-action (Sugawara-dressed): d_m = d_m (x) 1 + 1 (x) L_m,
// h_r = 1 (x) h_r, centrals add.
class TensorModule : public ModuleHandle {
 public:
  TensorModule(ModulePtr a, ModulePtr b);

  Vec act_key(const Generator& g, const BasisKey& b) const override;
  std::optional<Rat> central_value(GenTag tag) const override;
  std::vector<BasisKey> enumerate2(std::int64_t budget2) const override;
  std::int64_t size2(const BasisKey& b) const override;
  bool graded() const override { return a_->graded() && b_->graded(); }
  std::int64_t weight2(const BasisKey& b) const override;
  std::int64_t annihilation_bound2(const BasisKey& b) const override;
  std::string describe(const BasisKey& b) const override;

  BasisKey pair_key(const BasisKey& a, const BasisKey& b) const;
  std::pair<BasisKey, BasisKey> split_pair(const BasisKey& b) const;
  const ModulePtr& left() const { return a_; }
  const ModulePtr& right() const { return b_; }

 private:
  ModulePtr a_, b_;
};

// ---------------------------------------------------------------------------
// Builders mirroring the construction operations.
ModulePtr build_fock(AlgebraKind kind, const Rat& ell,
                     std::optional<Rat> mu = std::nullopt);
ModulePtr build_poly_module(std::int64_t n, const Rat& ell,
                            std::vector<Rat> lambda, std::vector<Rat> a);
ModulePtr build_laurent_module(AlgebraKind kind, Params scalars,
                               std::int64_t window);
ModulePtr build_character_module(AlgebraKind kind, FilterSpec inner,
                                 std::map<Generator, Rat> chi);
ModulePtr build_induced(ModulePtr base, FilterSpec outer,
                        std::int64_t base_budget2);
ModulePtr build_character_induced(AlgebraKind kind, FilterSpec inner,
                                  std::map<Generator, Rat> chi, FilterSpec outer,
                                  std::int64_t base_budget2 = 0);
ModulePtr vir_trivial_extend(AlgebraKind kind, ModulePtr vir_base);
ModulePtr sugawara_dress(ModulePtr heis_base, const Rat& z = Rat(0));
ModulePtr build_tensor(ModulePtr a, ModulePtr b);

// Verma module for the full algebra: induced from the character
// d_0 -> h, c1 -> c, level -> ell on D^(0,0) (twisted: also h_0 -> mu,
// cbar2 -> z).
ModulePtr build_verma(AlgebraKind kind, const Rat& h, const Rat& c, const Rat& ell,
                      const Rat& mu = Rat(0), const Rat& z = Rat(0));
// Verma module for the Virasoro subalgebra alone (domain: d's and c1).
ModulePtr build_vir_verma(AlgebraKind kind, const Rat& h, const Rat& c);

}  // namespace hv
