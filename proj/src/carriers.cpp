#include "hv/carriers.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "hv/sugawara.hpp"

namespace hv {

namespace {

Params params_of(std::initializer_list<std::pair<std::string, Rat>> kv) {
  Params p;
  for (const auto& [k, v] : kv) p.set(k, v);
  return p;
}

std::int64_t gen_cost2(std::int64_t idx2) {
  return std::max<std::int64_t>(idx2 < 0 ? -idx2 : idx2, 1);
}

}  // namespace

// ---------------------------------------------------------------------------
// FockModule

FockModule::FockModule(AlgebraKind kind, const Rat& ell, std::optional<Rat> mu)
    : ModuleHandle(kind, filter_heis(kind),
                   params_of({{"level", ell}})),
      ell_(ell),
      mu_(std::move(mu)) {
  if (is_zero(ell_)) throw ZeroLevel("build_fock: level must be nonzero");
  if (kind == AlgebraKind::MirrorHV && mu_)
    throw InvalidGenerator("build_fock: mu is a twisted-only parameter");
  slot_step2_ = 2;
  if (mu_) params_.set("mu", *mu_);
}

// key: flat ascending (slot, exp) pairs; slot p is h_{-p+1/2} (mirror,
// doubled index -(2p-1)) or h_{-p} (twisted, doubled index -2p).
Vec FockModule::act_key(const Generator& g, const BasisKey& b) const {
  Vec out;
  if (g.tag == GenTag::C2 || g.tag == GenTag::C3) {
    out.add(b, ell_);
    return out;
  }
  std::int64_t idx2 = g.idx2;
  if (idx2 == 0) {  // twisted h_0
    if (mu_ && !is_zero(*mu_)) out.add(b, *mu_);
    return out;
  }
  std::int64_t p = kind_ == AlgebraKind::MirrorHV ? (std::abs(idx2) + 1) / 2
                                                  : std::abs(idx2) / 2;
  if (idx2 < 0) {
    BasisKey nb = b;
    bool placed = false;
    std::vector<std::int64_t> v;
    for (size_t i = 0; i < b.v.size(); i += 2) {
      if (b.v[i] == p) {
        v.push_back(p);
        v.push_back(b.v[i + 1] + 1);
        placed = true;
      } else {
        if (!placed && b.v[i] > p) {
          v.push_back(p);
          v.push_back(1);
          placed = true;
        }
        v.push_back(b.v[i]);
        v.push_back(b.v[i + 1]);
      }
    }
    if (!placed) {
      v.push_back(p);
      v.push_back(1);
    }
    out.add(BasisKey{std::move(v)}, Rat(1));
    return out;
  }
  // annihilation: [h_r, h_{-r}] = r * level
  for (size_t i = 0; i < b.v.size(); i += 2) {
    if (b.v[i] != p) continue;
    std::vector<std::int64_t> v;
    for (size_t j = 0; j < b.v.size(); j += 2) {
      if (j == i) {
        if (b.v[j + 1] > 1) {
          v.push_back(b.v[j]);
          v.push_back(b.v[j + 1] - 1);
        }
      } else {
        v.push_back(b.v[j]);
        v.push_back(b.v[j + 1]);
      }
    }
    Rat coeff = rat(idx2, 2) * Rat(b.v[i + 1]) * ell_;
    out.add(BasisKey{std::move(v)}, coeff);
  }
  return out;
}

std::optional<Rat> FockModule::central_value(GenTag tag) const {
  if (tag == level_tag()) return ell_;
  return std::nullopt;
}

std::vector<BasisKey> FockModule::enumerate2(std::int64_t budget2) const {
  std::vector<BasisKey> out;
  std::vector<std::int64_t> cur;
  std::function<void(std::int64_t, std::int64_t)> rec =
      [&](std::int64_t slot, std::int64_t left) {
        std::int64_t cost = kind_ == AlgebraKind::MirrorHV ? 2 * slot - 1 : 2 * slot;
        if (cost > left) {
          out.push_back(BasisKey{cur});
          return;
        }
        rec(slot + 1, left);  // exponent 0 -- skip slot
        std::int64_t e = 1;
        while (e * cost <= left) {
          cur.push_back(slot);
          cur.push_back(e);
          rec(slot + 1, left - e * cost);
          cur.pop_back();
          cur.pop_back();
          ++e;
        }
      };
  rec(1, budget2);
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t FockModule::size2(const BasisKey& b) const {
  std::int64_t w = 0;
  for (size_t i = 0; i < b.v.size(); i += 2)
    w += b.v[i + 1] * (kind_ == AlgebraKind::MirrorHV ? 2 * b.v[i] - 1 : 2 * b.v[i]);
  return w;
}

std::int64_t FockModule::annihilation_bound2(const BasisKey& b) const {
  std::int64_t k = 0;
  for (size_t i = 0; i < b.v.size(); i += 2)
    k = std::max(k, kind_ == AlgebraKind::MirrorHV ? 2 * b.v[i] - 1 : 2 * b.v[i]);
  return k;
}

std::string FockModule::describe(const BasisKey& b) const {
  if (b.v.empty()) return "vac";
  std::string s;
  for (size_t i = 0; i < b.v.size(); i += 2) {
    std::int64_t idx2 =
        kind_ == AlgebraKind::MirrorHV ? -(2 * b.v[i] - 1) : -2 * b.v[i];
    s += gen_token(gen_h2(idx2));
    if (b.v[i + 1] != 1) s += "^" + std::to_string(b.v[i + 1]);
    s += " ";
  }
  return s + "vac";
}

// ---------------------------------------------------------------------------
// PolyModule

PolyModule::PolyModule(std::int64_t n, const Rat& ell, std::vector<Rat> lambda,
                       std::vector<Rat> a)
    : ModuleHandle(AlgebraKind::MirrorHV,
                   filter_heis_ge(AlgebraKind::MirrorHV, -n),
                   params_of({{"level", ell}})),
      n_(n),
      ell_(ell),
      lambda_(std::move(lambda)),
      a_(std::move(a)) {
  if (n_ < 1) throw InvalidGenerator("build_poly_module: n must be positive");
  if (is_zero(ell_)) throw ZeroLevel("build_poly_module: level must be nonzero");
  if (static_cast<std::int64_t>(lambda_.size()) != n_ ||
      static_cast<std::int64_t>(a_.size()) != n_)
    throw InvalidGenerator("build_poly_module: need n lambda's and n a's");
  for (const auto& l : lambda_)
    if (is_zero(l)) throw ZeroLambda("build_poly_module: lambda_i must be nonzero");
}

Vec PolyModule::act_key(const Generator& g, const BasisKey& b) const {
  Vec out;
  if (g.tag == GenTag::C2) {
    out.add(b, ell_);
    return out;
  }
  std::int64_t idx2 = g.idx2;
  if (idx2 > 2 * n_ - 1) return out;  // h_{n+j+1/2} f = 0
  std::int64_t i = idx2 > 0 ? (idx2 + 1) / 2 : (1 - idx2) / 2;  // 1..n
  std::int64_t e = b.v[i - 1];
  if (idx2 > 0) {
    // lambda_i f(.., x_i - 1, ..): binomial expansion of (x_i - 1)^e
    Rat binom(1);
    for (std::int64_t j = e; j >= 0; --j) {
      // C(e, j) * (-1)^(e-j)
      Rat coeff = binom;
      if ((e - j) % 2 != 0) coeff = -coeff;
      BasisKey nb = b;
      nb.v[i - 1] = j;
      out.add(nb, Rat(lambda_[i - 1] * coeff));
      if (j > 0) binom = binom * Rat(j) / Rat(e - j + 1);
    }
    return out;
  }
  // -(ell (i-1/2) / lambda_i) (x_i + a_i) f(.., x_i + 1, ..)
  Rat scale = -ell_ * rat(2 * i - 1, 2) / lambda_[i - 1];
  Rat binom(1);
  for (std::int64_t j = e; j >= 0; --j) {
    Rat coeff = binom * scale;
    BasisKey up = b;
    up.v[i - 1] = j + 1;
    out.add(up, coeff);
    if (!is_zero(a_[i - 1])) {
      BasisKey same = b;
      same.v[i - 1] = j;
      out.add(same, Rat(coeff * a_[i - 1]));
    }
    if (j > 0) binom = binom * Rat(j) / Rat(e - j + 1);
  }
  return out;
}

std::optional<Rat> PolyModule::central_value(GenTag tag) const {
  if (tag == GenTag::C2) return ell_;
  return std::nullopt;
}

std::vector<BasisKey> PolyModule::enumerate2(std::int64_t budget2) const {
  std::vector<BasisKey> out;
  std::vector<std::int64_t> cur(n_, 0);
  std::function<void(std::int64_t, std::int64_t)> rec = [&](std::int64_t i,
                                                            std::int64_t left) {
    if (i == n_) {
      out.push_back(BasisKey{cur});
      return;
    }
    for (std::int64_t e = 0; 2 * e <= left; ++e) {
      cur[i] = e;
      rec(i + 1, left - 2 * e);
    }
    cur[i] = 0;
  };
  rec(0, budget2);
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t PolyModule::size2(const BasisKey& b) const {
  std::int64_t s = 0;
  for (auto e : b.v) s += 2 * e;
  return s;
}

std::string PolyModule::describe(const BasisKey& b) const {
  std::string s;
  for (std::int64_t i = 0; i < n_; ++i) {
    if (b.v[i] == 0) continue;
    s += "x" + std::to_string(i + 1);
    if (b.v[i] != 1) s += "^" + std::to_string(b.v[i]);
    s += " ";
  }
  return s.empty() ? "1" : s.substr(0, s.size() - 1);
}

// ---------------------------------------------------------------------------
// LaurentModule

LaurentModule::LaurentModule(AlgebraKind kind, Params scalars, std::int64_t window)
    : ModuleHandle(kind, filter_Dmn(kind, 0, 0), std::move(scalars)),
      window_(window) {
  if (window_ < 2)
    throw WindowExceeded("build_laurent_module: window must be >= 2");
  if (is_zero(params_.get("level")))
    throw ZeroLevel("build_laurent_module: level scalar must be nonzero");
}

Vec LaurentModule::apply_h(std::int64_t k) const {
  if (k - 2 < -window_)
    throw WindowExceeded("laurent action needs f_" + std::to_string(k - 2) +
                         " outside window " + std::to_string(window_));
  Vec out;
  out.add(f(k), rat(k - 1));
  out.add(f(k - 1), rat(-1));
  out.add(f(k - 2), rat(-1));
  return out;
}

Vec LaurentModule::apply_e(std::int64_t k) const {
  if (k + 1 > window_)
    throw WindowExceeded("laurent action needs f_" + std::to_string(k + 1) +
                         " outside window " + std::to_string(window_));
  Vec out;
  out.add(f(k + 1), Rat(1));
  return out;
}

Vec LaurentModule::act_key(const Generator& g, const BasisKey& b) const {
  std::int64_t k = b.v[0];
  Vec out;
  switch (g.tag) {
    case GenTag::C1:
      out.add(b, params_.get("c"));
      return out;
    case GenTag::C2:
      out.add(b, kind_ == AlgebraKind::MirrorHV ? params_.get("level")
                                                : params_.get("z"));
      return out;
    case GenTag::C3:
      out.add(b, params_.get("level"));
      return out;
    case GenTag::D:
      if (g.idx2 == 0) {
        Vec h = apply_h(k);
        return kind_ == AlgebraKind::MirrorHV ? h.scaled(rat(-1, 2)) : h;
      }
      return out;  // d_i = 0, i >= 1
    case GenTag::H:
      if (kind_ == AlgebraKind::MirrorHV) {
        if (g.idx2 == 1) return apply_e(k);  // h_{1/2} = e
        return out;                          // h_{3/2+} = 0
      }
      if (g.idx2 == 2) return apply_e(k);  // h_1 = e
      if (g.idx2 == 0) {
        out.add(b, params_.get("zp"));  // h_0 = z'
        return out;
      }
      return out;  // h_{2+} = 0
  }
  return out;
}

std::optional<Rat> LaurentModule::central_value(GenTag tag) const {
  switch (tag) {
    case GenTag::C1:
      return params_.get("c");
    case GenTag::C2:
      return kind_ == AlgebraKind::MirrorHV ? params_.get("level")
                                            : params_.get("z");
    case GenTag::C3:
      if (kind_ == AlgebraKind::TwistedHV) return params_.get("level");
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

std::vector<BasisKey> LaurentModule::enumerate2(std::int64_t) const {
  std::vector<BasisKey> out;
  for (std::int64_t k = -window_; k <= window_; ++k) out.push_back(f(k));
  return out;
}

std::string LaurentModule::describe(const BasisKey& b) const {
  return "f_" + std::to_string(b.v[0]);
}

// ---------------------------------------------------------------------------
// CharModule

CharModule::CharModule(AlgebraKind kind, FilterSpec inner,
                       std::map<Generator, Rat> chi)
    : ModuleHandle(kind, std::move(inner), Params{}), chi_(std::move(chi)) {
  if (domain_.d_floor2 && *domain_.d_floor2 != FilterSpec::ALL &&
      *domain_.d_floor2 < 0)
    throw InvalidGenerator(
        "character module: inner d-tail must start at d_0 or later");

  std::int64_t max_idx2 = 0;
  for (auto it = chi_.begin(); it != chi_.end();) {
    const auto& [g, v] = *it;
    require_valid(kind_, g);
    if (!domain_.contains(g))
      throw InvalidGenerator("character assigns " + gen_token(g) +
                             " outside inner subalgebra " + domain_.name);
    if (is_zero(v)) {
      it = chi_.erase(it);
      continue;
    }
    max_idx2 = std::max(max_idx2, std::abs(g.idx2));
    if (g.degree2() != 0) graded_ = false;
    if (g.degree2() > ann_bound2_) ann_bound2_ = g.degree2();
    ++it;
  }
  for (const auto& [g, v] : chi_) params_.set(gen_token(g), v);

  // Consistency of the one-dimensional module: chi([x,y]) = 0 on all
  // bracket pairs within the touched index range plus a margin.
  std::int64_t floor_mag = 0;
  if (domain_.d_floor2 && *domain_.d_floor2 != FilterSpec::ALL)
    floor_mag = std::max(floor_mag, std::abs(*domain_.d_floor2));
  if (domain_.h_floor2 && *domain_.h_floor2 != FilterSpec::ALL)
    floor_mag = std::max(floor_mag, std::abs(*domain_.h_floor2));
  std::int64_t bound = std::max(max_idx2, floor_mag) + 6;
  std::vector<Generator> members;
  for (const auto& g : generators_up_to(kind_, bound / 2 + 1))
    if (domain_.contains(g)) members.push_back(g);
  for (size_t i = 0; i < members.size(); ++i)
    for (size_t j = i + 1; j < members.size(); ++j) {
      LieElement br = bracket(kind_, members[i], members[j]);
      Rat val(0);
      for (const auto& [g, c] : br) val += c * chi(g);
      if (!is_zero(val))
        throw InconsistentCharacter(
            "chi([" + gen_token(members[i]) + "," + gen_token(members[j]) +
            "]) = " + rat_str(val) + " (must vanish)");
    }
}

Rat CharModule::chi(const Generator& g) const {
  auto it = chi_.find(g);
  return it == chi_.end() ? Rat(0) : it->second;
}

Vec CharModule::act_key(const Generator& g, const BasisKey& b) const {
  Vec out;
  out.add(b, chi(g));
  return out;
}

std::optional<Rat> CharModule::central_value(GenTag tag) const {
  Generator g{tag, 0};
  if (!g.is_central() || !domain_.contains(g)) return std::nullopt;
  return chi(g);
}

// ---------------------------------------------------------------------------
// InducedModule

InducedModule::InducedModule(ModulePtr base, FilterSpec outer,
                             std::int64_t base_budget2)
    : ModuleHandle(base->kind(), outer, base->params()),
      base_(std::move(base)),
      base_budget2_(base_budget2),
      orderer_(base_->kind(), [inner = base_->domain()](const Generator& a,
                                                        const Generator& b) {
        bool ia = inner.contains(a), ib = inner.contains(b);
        if (ia != ib) return ib;  // complement generators first
        return canonical_less(a, b);
      }) {
  const FilterSpec& inner = base_->domain();
  if (!inner.subset_of(domain_))
    throw KindMismatch("build_induced: base domain " + inner.name +
                       " not contained in outer " + domain_.name);
  if (domain_.d_floor2 && *domain_.d_floor2 != FilterSpec::ALL &&
      *domain_.d_floor2 < 0)
    throw InvalidGenerator("build_induced: outer d-tail must be a subalgebra");
  if ((domain_.c1 && !inner.c1) || (domain_.c2 && !inner.c2) ||
      (domain_.c3 && !inner.c3))
    throw InvalidGenerator(
        "build_induced: central generators of the outer algebra must act "
        "through the base");
  domain_.name = "Ind(" + inner.name + " -> " + domain_.name + ")";
}

InducedModule::Decoded InducedModule::decode(const BasisKey& b) const {
  Decoded d;
  size_t i = 0;
  std::int64_t nh = b.v[i++];
  for (std::int64_t t = 0; t < nh; ++t, i += 2) d.h.push_back({b.v[i], b.v[i + 1]});
  std::int64_t nd = b.v[i++];
  for (std::int64_t t = 0; t < nd; ++t, i += 2) d.d.push_back({b.v[i], b.v[i + 1]});
  d.base.v.assign(b.v.begin() + i, b.v.end());
  return d;
}

BasisKey InducedModule::encode(const Decoded& d) {
  BasisKey b;
  b.v.push_back(static_cast<std::int64_t>(d.h.size()));
  for (const auto& [idx2, e] : d.h) {
    b.v.push_back(idx2);
    b.v.push_back(e);
  }
  b.v.push_back(static_cast<std::int64_t>(d.d.size()));
  for (const auto& [idx2, e] : d.d) {
    b.v.push_back(idx2);
    b.v.push_back(e);
  }
  b.v.insert(b.v.end(), d.base.v.begin(), d.base.v.end());
  return b;
}

Vec InducedModule::act_key(const Generator& g, const BasisKey& b) const {
  auto cache_key = std::make_pair(g, b);
  auto hit = act_cache_.find(cache_key);
  if (hit != act_cache_.end()) return hit->second;

  Decoded dec = decode(b);
  std::vector<Generator> word;
  word.push_back(g);
  for (const auto& [idx2, e] : dec.h)
    for (std::int64_t t = 0; t < e; ++t) word.push_back(gen_h2(idx2));
  for (const auto& [idx2, e] : dec.d)
    for (std::int64_t t = 0; t < e; ++t) word.push_back(gen_d(idx2 / 2));

  EnvElement nf = orderer_.normal_form(word);
  const FilterSpec& inner = base_->domain();
  Vec out;
  for (const auto& [mono, coeff] : nf.terms) {
    Decoded res;
    std::vector<Generator> inner_word;
    for (const auto& [gen, e] : mono.factors) {
      if (inner.contains(gen)) {
        for (std::int64_t t = 0; t < e; ++t) inner_word.push_back(gen);
      } else if (gen.tag == GenTag::H) {
        res.h.push_back({gen.idx2, e});
      } else if (gen.tag == GenTag::D) {
        res.d.push_back({gen.idx2, e});
      } else {
        throw InvalidGenerator("induced action produced central " +
                               gen_token(gen) + " outside base domain");
      }
    }
    Vec base_out = base_->act_word(inner_word, unit_vec(dec.base));
    for (const auto& [bk, bc] : base_out.terms) {
      Decoded term = res;
      term.base = bk;
      out.add(encode(term), Rat(coeff * bc));
    }
  }
  act_cache_.emplace(std::move(cache_key), out);
  return out;
}

std::vector<Generator> InducedModule::complement_gens(std::int64_t budget2) const {
  const FilterSpec& inner = base_->domain();
  std::vector<Generator> out;
  for (std::int64_t idx2 = -budget2 - 1; idx2 <= budget2 + 1; ++idx2) {
    Generator h = gen_h2(idx2);
    if (valid_for(kind_, h) && domain_.contains(h) && !inner.contains(h) &&
        gen_cost2(idx2) <= budget2)
      out.push_back(h);
    if (idx2 % 2 == 0) {
      Generator d = gen_d(idx2 / 2);
      if (domain_.contains(d) && !inner.contains(d) && gen_cost2(idx2) <= budget2)
        out.push_back(d);
    }
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

std::vector<BasisKey> InducedModule::enumerate2(std::int64_t budget2) const {
  std::vector<Generator> gens = complement_gens(budget2);
  std::vector<BasisKey> out;
  Decoded cur;
  std::function<void(size_t, std::int64_t)> rec = [&](size_t gi, std::int64_t left) {
    if (gi == gens.size()) {
      std::int64_t base_budget = left;
      if (base_budget2_ > 0) base_budget = std::min(base_budget, base_budget2_);
      for (const auto& bk : base_->enumerate2(base_budget)) {
        Decoded d = cur;
        d.base = bk;
        out.push_back(encode(d));
      }
      return;
    }
    const Generator& g = gens[gi];
    std::int64_t cost = gen_cost2(g.idx2);
    rec(gi + 1, left);
    std::int64_t e = 1;
    while (e * cost <= left) {
      auto& list = g.tag == GenTag::H ? cur.h : cur.d;
      list.push_back({g.idx2, e});
      rec(gi + 1, left - e * cost);
      list.pop_back();
      ++e;
    }
  };
  rec(0, budget2);
  for (auto& b : out) {
    // factor lists were built in generator order; normalize to ascending
    Decoded d = decode(b);
    std::sort(d.h.begin(), d.h.end());
    std::sort(d.d.begin(), d.d.end());
    b = encode(d);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::int64_t InducedModule::size2(const BasisKey& b) const {
  Decoded d = decode(b);
  std::int64_t s = base_->size2(d.base);
  for (const auto& [idx2, e] : d.h) s += e * gen_cost2(idx2);
  for (const auto& [idx2, e] : d.d) s += e * gen_cost2(idx2);
  return s;
}

std::int64_t InducedModule::weight2(const BasisKey& b) const {
  Decoded d = decode(b);
  std::int64_t w = base_->weight2(d.base);
  for (const auto& [idx2, e] : d.h) w -= e * idx2;
  for (const auto& [idx2, e] : d.d) w -= e * idx2;
  return w;
}

std::int64_t InducedModule::annihilation_bound2(const BasisKey& b) const {
  Decoded d = decode(b);
  std::int64_t k = base_->annihilation_bound2(d.base);
  for (const auto& [idx2, e] : d.h) k += e * std::abs(idx2);
  for (const auto& [idx2, e] : d.d) k += e * std::abs(idx2);
  return k;
}

std::string InducedModule::describe(const BasisKey& b) const {
  Decoded d = decode(b);
  std::string s;
  for (const auto& [idx2, e] : d.h) {
    s += gen_token(gen_h2(idx2));
    if (e != 1) s += "^" + std::to_string(e);
    s += " ";
  }
  for (const auto& [idx2, e] : d.d) {
    s += gen_token(gen_d(idx2 / 2));
    if (e != 1) s += "^" + std::to_string(e);
    s += " ";
  }
  return s + "(x) " + base_->describe(d.base);
}

std::tuple<ExpVec, ExpVec, BasisKey> InducedModule::split_key(const BasisKey& b) const {
  const FilterSpec& inner = base_->domain();
  Decoded d = decode(b);
  ExpVec iv, kv;
  if (!d.h.empty()) {
    if (!inner.h_floor2 || *inner.h_floor2 == FilterSpec::ALL)
      throw InvalidGenerator("split_key: base has no h-boundary");
    for (const auto& [idx2, e] : d.h) {
      std::int64_t pos2 = *inner.h_floor2 - idx2;
      if (pos2 <= 0 || pos2 % 2 != 0)
        throw InvalidGenerator("split_key: non-slot h factor " +
                               gen_token(gen_h2(idx2)));
      iv.bump(pos2 / 2, e);
    }
  }
  if (!d.d.empty()) {
    if (!inner.d_floor2 || *inner.d_floor2 == FilterSpec::ALL)
      throw InvalidGenerator("split_key: base has no d-boundary");
    for (const auto& [idx2, e] : d.d) {
      std::int64_t pos2 = *inner.d_floor2 - idx2;
      if (pos2 <= 0 || pos2 % 2 != 0)
        throw InvalidGenerator("split_key: non-slot d factor " +
                               gen_token(gen_d(idx2 / 2)));
      kv.bump(pos2 / 2, e);
    }
  }
  return {iv, kv, d.base};
}

BasisKey InducedModule::make_key(const ExpVec& i, const ExpVec& k,
                                 const BasisKey& base) const {
  const FilterSpec& inner = base_->domain();
  Decoded d;
  for (const auto& [pos, e] : i.entries) {
    if (!inner.h_floor2 || *inner.h_floor2 == FilterSpec::ALL)
      throw InvalidGenerator("make_key: base has no h-boundary");
    d.h.push_back({*inner.h_floor2 - 2 * pos, e});
  }
  std::sort(d.h.begin(), d.h.end());
  for (const auto& [pos, e] : k.entries) {
    if (!inner.d_floor2 || *inner.d_floor2 == FilterSpec::ALL)
      throw InvalidGenerator("make_key: base has no d-boundary");
    d.d.push_back({*inner.d_floor2 - 2 * pos, e});
  }
  std::sort(d.d.begin(), d.d.end());
  d.base = base;
  return encode(d);
}

// ---------------------------------------------------------------------------
// VirTrivialModule

VirTrivialModule::VirTrivialModule(AlgebraKind kind, ModulePtr vir_base)
    : ModuleHandle(kind, filter_full(kind), vir_base->params()),
      base_(std::move(vir_base)) {
  if (!base_->domain().d_floor2 ||
      *base_->domain().d_floor2 != FilterSpec::ALL)
    throw KindMismatch("vir_trivial_extend: base must carry the full d-action");
}

Vec VirTrivialModule::act_key(const Generator& g, const BasisKey& b) const {
  switch (g.tag) {
    case GenTag::D:
      return base_->act_key(g, b);
    case GenTag::C1:
      return base_->act_key(g, b);
    default:
      return Vec{};  // h's, level central and cbar2 act as zero
  }
}

std::optional<Rat> VirTrivialModule::central_value(GenTag tag) const {
  if (tag == GenTag::C1) return base_->central_value(GenTag::C1);
  if (tag == GenTag::C2) return Rat(0);
  if (tag == GenTag::C3 && kind_ == AlgebraKind::TwistedHV) return Rat(0);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// SugawaraDressedModule

SugawaraDressedModule::SugawaraDressedModule(ModulePtr heis_base, Rat z)
    : ModuleHandle(heis_base->kind(), filter_full(heis_base->kind()),
                   heis_base->params()),
      base_(std::move(heis_base)),
      z_(std::move(z)) {
  ell_ = base_->require_level();
  if (kind_ == AlgebraKind::MirrorHV && !is_zero(z_))
    throw InvalidGenerator("sugawara_dress: z is a twisted-only parameter");
  params_.set("z", z_);
  if (!base_->domain().h_floor2 ||
      *base_->domain().h_floor2 != FilterSpec::ALL)
    throw KindMismatch("sugawara_dress: base must carry the full h-action");
}

Vec SugawaraDressedModule::act_key(const Generator& g, const BasisKey& b) const {
  switch (g.tag) {
    case GenTag::H:
      return base_->act_key(g, b);
    case GenTag::D: {
      Vec v = unit_vec(b);
      if (kind_ == AlgebraKind::MirrorHV)
        return sugawara_L(*base_, g.idx2 / 2, ell_, v);
      return sugawara_Lbar(*base_, g.idx2 / 2, ell_, z_, v);
    }
    default: {
      Vec out;
      auto cv = central_value(g.tag);
      out.add(b, *cv);
      return out;
    }
  }
}

std::optional<Rat> SugawaraDressedModule::central_value(GenTag tag) const {
  if (tag == GenTag::C1) {
    if (kind_ == AlgebraKind::MirrorHV) return Rat(1);
    return Rat(1) - Rat(12) * z_ * z_ / ell_;
  }
  if (kind_ == AlgebraKind::MirrorHV) {
    if (tag == GenTag::C2) return ell_;
    return std::nullopt;
  }
  if (tag == GenTag::C2) return z_;
  if (tag == GenTag::C3) return ell_;
  return std::nullopt;
}

std::int64_t SugawaraDressedModule::annihilation_bound2(const BasisKey& b) const {
  return 3 * base_->annihilation_bound2(b) + 4;
}

// ---------------------------------------------------------------------------
// TensorModule

TensorModule::TensorModule(ModulePtr a, ModulePtr b)
    : ModuleHandle(a->kind(), filter_full(a->kind()), Params{}),
      a_(std::move(a)),
      b_(std::move(b)) {
  if (a_->kind() != b_->kind())
    throw KindMismatch("build_tensor: factors must share the algebra kind");
  auto full = [](const FilterSpec& f) {
    return f.d_floor2 && *f.d_floor2 == FilterSpec::ALL && f.h_floor2 &&
           *f.h_floor2 == FilterSpec::ALL;
  };
  if (!full(a_->domain()) || !full(b_->domain()))
    throw KindMismatch("build_tensor: both factors must be full-algebra modules");
  b_->require_level();
  for (GenTag t : {GenTag::C1, GenTag::C2, GenTag::C3}) {
    auto v = central_value(t);
    if (v) params_.set(gen_token(Generator{t, 0}), *v);
  }
}

BasisKey TensorModule::pair_key(const BasisKey& a, const BasisKey& b) const {
  BasisKey k;
  k.v.push_back(static_cast<std::int64_t>(a.v.size()));
  k.v.insert(k.v.end(), a.v.begin(), a.v.end());
  k.v.insert(k.v.end(), b.v.begin(), b.v.end());
  return k;
}

std::pair<BasisKey, BasisKey> TensorModule::split_pair(const BasisKey& b) const {
  std::int64_t na = b.v[0];
  BasisKey ka, kb;
  ka.v.assign(b.v.begin() + 1, b.v.begin() + 1 + na);
  kb.v.assign(b.v.begin() + 1 + na, b.v.end());
  return {ka, kb};
}

Vec TensorModule::act_key(const Generator& g, const BasisKey& key) const {
  auto [ka, kb] = split_pair(key);
  Vec out;
  if (g.is_central()) {
    out.add(key, *central_value(g.tag));
    return out;
  }
  for (const auto& [k2, c] : a_->act_key(g, ka).terms)
    out.add(pair_key(k2, kb), c);
  for (const auto& [k2, c] : b_->act_key(g, kb).terms)
    out.add(pair_key(ka, k2), c);
  return out;
}

std::optional<Rat> TensorModule::central_value(GenTag tag) const {
  auto va = a_->central_value(tag);
  auto vb = b_->central_value(tag);
  if (!va && !vb) return std::nullopt;
  return (va ? *va : Rat(0)) + (vb ? *vb : Rat(0));
}

std::vector<BasisKey> TensorModule::enumerate2(std::int64_t budget2) const {
  std::vector<BasisKey> out;
  for (const auto& ka : a_->enumerate2(budget2)) {
    std::int64_t left = budget2 - a_->size2(ka);
    for (const auto& kb : b_->enumerate2(left)) out.push_back(pair_key(ka, kb));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t TensorModule::size2(const BasisKey& b) const {
  auto [ka, kb] = split_pair(b);
  return a_->size2(ka) + b_->size2(kb);
}

std::int64_t TensorModule::weight2(const BasisKey& b) const {
  auto [ka, kb] = split_pair(b);
  return a_->weight2(ka) + b_->weight2(kb);
}

std::int64_t TensorModule::annihilation_bound2(const BasisKey& b) const {
  auto [ka, kb] = split_pair(b);
  return std::max(a_->annihilation_bound2(ka), b_->annihilation_bound2(kb));
}

std::string TensorModule::describe(const BasisKey& b) const {
  auto [ka, kb] = split_pair(b);
  return a_->describe(ka) + " (x) " + b_->describe(kb);
}

// ---------------------------------------------------------------------------
// Builders

ModulePtr build_fock(AlgebraKind kind, const Rat& ell, std::optional<Rat> mu) {
  return std::make_shared<FockModule>(kind, ell, std::move(mu));
}

ModulePtr build_poly_module(std::int64_t n, const Rat& ell, std::vector<Rat> lambda,
                            std::vector<Rat> a) {
  return std::make_shared<PolyModule>(n, ell, std::move(lambda), std::move(a));
}

ModulePtr build_laurent_module(AlgebraKind kind, Params scalars,
                               std::int64_t window) {
  return std::make_shared<LaurentModule>(kind, std::move(scalars), window);
}

ModulePtr build_character_module(AlgebraKind kind, FilterSpec inner,
                                 std::map<Generator, Rat> chi) {
  return std::make_shared<CharModule>(kind, std::move(inner), std::move(chi));
}

ModulePtr build_induced(ModulePtr base, FilterSpec outer,
                        std::int64_t base_budget2) {
  return std::make_shared<InducedModule>(std::move(base), std::move(outer),
                                         base_budget2);
}

ModulePtr build_character_induced(AlgebraKind kind, FilterSpec inner,
                                  std::map<Generator, Rat> chi, FilterSpec outer,
                                  std::int64_t base_budget2) {
  return build_induced(build_character_module(kind, std::move(inner), std::move(chi)),
                       std::move(outer), base_budget2);
}

ModulePtr vir_trivial_extend(AlgebraKind kind, ModulePtr vir_base) {
  return std::make_shared<VirTrivialModule>(kind, std::move(vir_base));
}

ModulePtr sugawara_dress(ModulePtr heis_base, const Rat& z) {
  return std::make_shared<SugawaraDressedModule>(std::move(heis_base), z);
}

ModulePtr build_tensor(ModulePtr a, ModulePtr b) {
  return std::make_shared<TensorModule>(std::move(a), std::move(b));
}

ModulePtr build_verma(AlgebraKind kind, const Rat& h, const Rat& c, const Rat& ell,
                      const Rat& mu, const Rat& z) {
  std::map<Generator, Rat> chi;
  chi[gen_d(0)] = h;
  chi[gen_c1()] = c;
  if (kind == AlgebraKind::MirrorHV) {
    chi[gen_c2()] = ell;
  } else {
    chi[gen_c3()] = ell;
    chi[gen_c2()] = z;
    chi[gen_h2(0)] = mu;
  }
  return build_character_induced(kind, filter_Dmn(kind, 0, 0), std::move(chi),
                                 filter_full(kind));
}

ModulePtr build_vir_verma(AlgebraKind kind, const Rat& h, const Rat& c) {
  std::map<Generator, Rat> chi;
  chi[gen_d(0)] = h;
  chi[gen_c1()] = c;
  return build_character_induced(kind, filter_vir_ge(kind, 0), std::move(chi),
                                 filter_vir(kind));
}

}  // namespace hv
