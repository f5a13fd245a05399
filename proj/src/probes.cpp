#include "hv/probes.hpp"

#include <algorithm>
#include <random>

#include "hv/sugawara.hpp"

namespace hv {

Vec ProbeOp::apply(const ModuleHandle& m, const Vec& v) const {
  if (dprime) return d_prime(m, p, v);
  return m.act(g, v);
}

std::string ProbeOp::str() const {
  if (dprime) return "d'_" + std::to_string(p);
  return gen_token(g);
}

std::vector<ProbeOp> GenFamily::members(const ModuleHandle& m,
                                        std::int64_t max_bound2) const {
  std::vector<ProbeOp> out;
  switch (type) {
    case Type::HeisTail: {
      std::int64_t idx2 = m.kind() == AlgebraKind::MirrorHV ? 2 * r + 1 : 2 * r;
      for (; idx2 <= max_bound2 + 2; idx2 += 2)
        out.push_back(ProbeOp::of_gen(gen_h2(idx2)));
      break;
    }
    case Type::VirTail:
      for (std::int64_t j = r; 2 * j <= max_bound2 + 2; ++j)
        out.push_back(ProbeOp::of_gen(gen_d(j)));
      break;
    case Type::DPrimeTail:
      // L_p can act nonzero up to p = K (the quadratic window is
      // [2p - K, K]), unlike the plain generator tails.
      for (std::int64_t p = r; p <= max_bound2 + 1; ++p)
        out.push_back(ProbeOp::of_dprime(p));
      break;
  }
  return out;
}

std::string GenFamily::str() const {
  switch (type) {
    case Type::HeisTail:
      return "h^(" + std::to_string(r) + ")";
    case Type::VirTail:
      return "Vir^(" + std::to_string(r) + ")";
    case Type::DPrimeTail:
      return "d'>=" + std::to_string(r);
  }
  return "?";
}

std::vector<Vec> joint_kernel(const ModuleHandle& m,
                              const std::vector<ProbeOp>& ops,
                              const std::vector<Vec>& basis) {
  if (basis.empty()) return {};
  const std::int64_t cols = static_cast<std::int64_t>(basis.size());
  RatMatrix a(0, cols);
  for (const auto& op : ops) {
    std::map<BasisKey, std::map<std::int64_t, Rat>> rows;
    for (std::int64_t i = 0; i < cols; ++i) {
      Vec img = op.apply(m, basis[i]);
      for (const auto& [key, c] : img.terms) rows[key][i] = c;
    }
    for (auto& [key, row] : rows) a.append_row(row);
  }
  std::vector<Vec> out;
  for (const auto& coeffs : kernel(a)) {
    Vec v;
    for (std::int64_t i = 0; i < cols; ++i) v.add(basis[i], coeffs[i]);
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

std::vector<Vec> unit_basis(const ModuleHandle& m, std::int64_t trunc_n) {
  std::vector<Vec> basis;
  for (const auto& key : m.enumerate2(2 * trunc_n)) basis.push_back(unit_vec(key));
  return basis;
}

std::int64_t max_bound2(const ModuleHandle& m, const std::vector<Vec>& basis) {
  std::int64_t k = 0;
  for (const auto& v : basis) k = std::max(k, vec_ann_bound2(m, v));
  return k;
}

}  // namespace

std::vector<Vec> annihilator(const ModuleHandle& m, const GenFamily& fam,
                             std::int64_t trunc_n) {
  std::vector<Vec> basis = unit_basis(m, trunc_n);
  return joint_kernel(m, fam.members(m, max_bound2(m, basis)), basis);
}

namespace {

// First r in [-bound, bound] whose family-annihilator inside `basis` is
// nonzero; fills the report accordingly.
void scan_min(const ModuleHandle& m, GenFamily::Type type,
              const std::vector<Vec>& basis, std::int64_t scan_bound,
              InvariantReport& rep) {
  std::int64_t k2 = max_bound2(m, basis);
  for (std::int64_t r = -scan_bound; r <= scan_bound; ++r) {
    GenFamily fam{type, r};
    std::vector<Vec> ann = joint_kernel(m, fam.members(m, k2), basis);
    if (ann.empty()) continue;
    rep.witness = std::move(ann);
    rep.value = r;
    if (r == -scan_bound) {
      rep.kind = InvariantReport::Kind::MinusInfinity;
      rep.detail = "nonzero at scan floor " + std::to_string(-scan_bound);
    } else {
      rep.kind = InvariantReport::Kind::Finite;
    }
    return;
  }
  rep.kind = InvariantReport::Kind::Undetermined;
  rep.value = scan_bound;
  rep.detail = "no nonzero annihilator up to " + std::to_string(scan_bound);
}

}  // namespace

InvariantReport invariant(const ModuleHandle& m, const std::string& which,
                          std::int64_t trunc_n, std::int64_t scan_bound) {
  InvariantReport rep;
  rep.name = which;
  rep.truncation = trunc_n;
  const bool mirror = m.kind() == AlgebraKind::MirrorHV;
  if ((mirror && (which == "n_M" || which == "r_M")) ||
      (!mirror && (which == "n_S" || which == "m_S" || which == "r_S")))
    throw KindMismatch("invariant " + which + " does not match algebra kind");

  std::vector<Vec> all = unit_basis(m, trunc_n);

  // n_S / n_M: least r with Ann(h^(r)) nonzero
  InvariantReport n_rep = rep;
  n_rep.name = mirror ? "n_S" : "n_M";
  scan_min(m, GenFamily::Type::HeisTail, all, scan_bound, n_rep);
  if (which == "n_S" || which == "n_M") return n_rep;
  if (n_rep.kind != InvariantReport::Kind::Finite)
    throw HypothesisViolated("invariant " + which + " needs a finite " +
                             n_rep.name + " first");
  const std::vector<Vec>& w0 = n_rep.witness;

  if (which == "r_M") {
    // Y_n = Ann_{M_0}{d'_p : p >= n}
    m.require_level();
    InvariantReport r_rep = rep;
    scan_min(m, GenFamily::Type::DPrimeTail, w0, scan_bound, r_rep);
    r_rep.name = "r_M";
    r_rep.truncation = trunc_n;
    if (r_rep.kind == InvariantReport::Kind::MinusInfinity) {
      // declared -inf only when d' vanishes identically on the floor space
      std::int64_t k2 = max_bound2(m, r_rep.witness);
      for (std::int64_t p = -scan_bound - 2; p <= k2 + 1; ++p)
        for (const auto& y : r_rep.witness)
          if (!d_prime(m, p, y).is_zero()) {
            r_rep.kind = InvariantReport::Kind::Undetermined;
            r_rep.detail = "annihilator nonzero at scan floor but d' does not vanish";
            return r_rep;
          }
    }
    return r_rep;
  }

  // m_S: least r with Ann_{W_0}(Vir^(r)) nonzero
  InvariantReport m_rep = rep;
  m_rep.name = "m_S";
  scan_min(m, GenFamily::Type::VirTail, w0, scan_bound, m_rep);
  if (which == "m_S") return m_rep;
  if (m_rep.kind != InvariantReport::Kind::Finite)
    throw HypothesisViolated("invariant r_S needs a finite m_S first");
  const std::vector<Vec>& u0 = m_rep.witness;

  // r_S: least n with Y_n = Ann_{U_0}{d'_p : p >= n} nonzero
  m.require_level();
  InvariantReport r_rep = rep;
  scan_min(m, GenFamily::Type::DPrimeTail, u0, scan_bound, r_rep);
  r_rep.name = "r_S";
  if (r_rep.kind == InvariantReport::Kind::MinusInfinity) {
    std::int64_t k2 = max_bound2(m, r_rep.witness);
    for (std::int64_t p = -scan_bound - 2; p <= k2 + 1; ++p)
      for (const auto& y : r_rep.witness)
        if (!d_prime(m, p, y).is_zero()) {
          r_rep.kind = InvariantReport::Kind::Undetermined;
          r_rep.detail = "annihilator nonzero at scan floor but d' does not vanish";
          return r_rep;
        }
  }
  return r_rep;
}

namespace {

std::vector<std::pair<ExpVec, ExpVec>> support_pairs(const InducedModule& m,
                                                     const Vec& v) {
  if (v.is_zero()) throw ZeroVector("deg of the zero vector");
  std::vector<std::pair<ExpVec, ExpVec>> supp;
  for (const auto& [key, c] : v.terms) {
    auto [i, k, base] = m.split_key(key);
    supp.push_back({i, k});
  }
  std::sort(supp.begin(), supp.end());
  supp.erase(std::unique(supp.begin(), supp.end()), supp.end());
  return supp;
}

}  // namespace

std::pair<ExpVec, ExpVec> deg_of(const InducedModule& m, const Vec& v) {
  auto supp = support_pairs(m, v);
  auto best = supp.front();
  for (const auto& p : supp)
    if (cmp_pair(best, p) == std::strong_ordering::less) best = p;
  return best;
}

std::pair<ExpVec, ExpVec> deg_prime_of(const InducedModule& m, const Vec& v) {
  auto supp = support_pairs(m, v);
  auto best = supp.front();
  for (const auto& p : supp)
    if (cmp_pair_prime(best, p) == std::strong_ordering::less) best = p;
  return best;
}

namespace {

std::int64_t min_pos(const ExpVec& e) { return e.entries.begin()->first; }

// Lemma hypothesis gates shared by the degree-lemma probe.
void gate_annihilates(const ModuleHandle& base, const std::vector<Vec>& bb,
                      const Generator& g, const std::string& hyp) {
  for (const auto& v : bb)
    if (!base.act(g, v).is_zero())
      throw HypothesisViolated(hyp + ": " + gen_token(g) +
                               " does not annihilate the base");
}

void gate_injective(const ModuleHandle& base, const std::vector<Vec>& bb,
                    const Generator& g, const std::string& hyp) {
  if (!joint_kernel(base, {ProbeOp::of_gen(g)}, bb).empty())
    throw HypothesisViolated(hyp + ": " + gen_token(g) +
                             " has a kernel on the base");
}

struct LemmaSampler {
  const InducedModule& ind;
  std::vector<BasisKey> base_keys;
  std::mt19937_64 rng;
  std::int64_t wmax;

  LemmaSampler(const InducedModule& i, const DegreeLemmaConfig& cfg,
               std::int64_t headroom)
      : ind(i), rng(cfg.seed) {
    base_keys = cfg.base->enumerate2(cfg.base_budget2);
    wmax = std::max<std::int64_t>(1, cfg.trunc_n - headroom);
  }

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  }

  Rat coeff() {
    std::int64_t c = uniform(1, 6);
    return Rat(c <= 3 ? c : 3 - c);  // {1,2,3,-1,-2,-3}
  }

  ExpVec random_expvec(std::int64_t w) {
    ExpVec e;
    while (w > 0) {
      std::int64_t p = uniform(1, std::min<std::int64_t>(3, w));
      e.bump(p, 1);
      w -= p;
    }
    return e;
  }

  const BasisKey& random_base() {
    return base_keys[static_cast<size_t>(uniform(0, base_keys.size() - 1))];
  }

  void add_term(Vec& v, const ExpVec& i, const ExpVec& k) {
    v.add(ind.make_key(i, k, random_base()), coeff());
  }
};

}  // namespace

VerificationReport check_degree_lemma(LemmaId which, const DegreeLemmaConfig& cfg) {
  const ModuleHandle& base = *cfg.base;
  AlgebraKind kind = base.kind();
  if (kind != AlgebraKind::MirrorHV)
    throw HypothesisViolated("degree lemmas are stated for the mirror algebra");
  const FilterSpec& dom = base.domain();
  if (!dom.d_floor2 || *dom.d_floor2 != 0 || !dom.h_floor2 ||
      *dom.h_floor2 != -2 * cfg.n + 1)
    throw HypothesisViolated("base is not a D^(0,-" + std::to_string(cfg.n) +
                             ")-module");
  base.require_level();

  const std::int64_t n = cfg.n, k = cfg.k, l = cfg.l;
  std::vector<Vec> bb;
  for (const auto& key : base.enumerate2(cfg.base_budget2))
    bb.push_back(unit_vec(key));

  switch (which) {
    case LemmaId::L32:
      if (k != n) throw HypothesisViolated("lemma 3.2 needs k = n");
      gate_injective(base, bb, gen_h2(2 * n - 1), "lemma 3.2 (a)");
      for (std::int64_t i = n + 1; i <= n + 3; ++i)
        gate_annihilates(base, bb, gen_h2(2 * i - 1), "lemma 3.2 (b)");
      break;
    case LemmaId::L33:
      if (k != n || l < 2 * n)
        throw HypothesisViolated("lemma 3.3 needs k = n and l >= 2n");
      gate_injective(base, bb, gen_h2(2 * n - 1), "lemma 3.3 (a)");
      gate_injective(base, bb, gen_d(l), "lemma 3.3 (d_l)");
      for (std::int64_t i = n + 1; i <= n + 3; ++i)
        gate_annihilates(base, bb, gen_h2(2 * i - 1), "lemma 3.3 (b)");
      for (std::int64_t j = l + 1; j <= l + 3; ++j)
        gate_annihilates(base, bb, gen_d(j), "lemma 3.3 (b)");
      break;
    case LemmaId::L34:
      if (k < n || k + n < 2)
        throw HypothesisViolated("lemma 3.4 needs k >= n and k + n >= 2");
      gate_injective(base, bb, gen_h2(2 * k - 1), "lemma 3.4 (a)");
      for (std::int64_t i = k + 1; i <= k + 3; ++i)
        gate_annihilates(base, bb, gen_h2(2 * i - 1), "lemma 3.4 (b)");
      break;
    case LemmaId::L35:
      if (k <= n || k + n < 2)
        throw HypothesisViolated("lemma 3.5 needs k > n and k + n >= 2");
      gate_injective(base, bb, gen_h2(2 * k - 1), "lemma 3.5 (a)");
      for (std::int64_t i = k + 1; i <= k + 3; ++i)
        gate_annihilates(base, bb, gen_h2(2 * i - 1), "lemma 3.5 (b)");
      for (std::int64_t j = k + n; j <= k + n + 2; ++j)
        gate_annihilates(base, bb, gen_d(j), "lemma 3.5 (d-tail)");
      break;
  }

  InducedModule ind(cfg.base, filter_full(kind), cfg.base_budget2);
  LemmaSampler smp(ind, cfg, /*headroom=*/k + n + 1);
  VerificationReport rep;

  auto describe_pair = [](const std::pair<ExpVec, ExpVec>& p) {
    return "(" + p.first.str() + ", " + p.second.str() + ")";
  };

  for (std::int64_t s = 0; s < cfg.samples; ++s) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      Vec v;
      std::pair<ExpVec, ExpVec> dg;
      Generator op;
      std::pair<ExpVec, ExpVec> expect;
      bool ok = false;
      switch (which) {
        case LemmaId::L32: {
          // deg(v) = (i, j), i != 0; h_{p+n-1/2} lowers i at its lowest slot
          std::int64_t w = smp.uniform(1, smp.wmax);
          ExpVec iv = smp.random_expvec(w);
          ExpVec kv = smp.random_expvec(smp.uniform(0, smp.wmax - 1));
          v = Vec{};
          smp.add_term(v, iv, kv);
          for (std::int64_t extra = smp.uniform(0, 2); extra > 0; --extra) {
            std::int64_t w2 = smp.uniform(0, w + weight(kv) - 1);
            ExpVec i2 = smp.random_expvec(smp.uniform(0, w2));
            ExpVec k2 = smp.random_expvec(w2 - weight(i2));
            if (i2.is_zero() && k2.is_zero()) continue;
            smp.add_term(v, i2, k2);
          }
          if (v.is_zero()) break;
          dg = deg_of(ind, v);
          if (dg.first.is_zero()) break;
          std::int64_t p = min_pos(dg.first);
          op = gen_h2(2 * (p + n) - 1);
          expect = {*ev_sub(dg.first, eps(p)), dg.second};
          ok = true;
          break;
        }
        case LemmaId::L33: {
          // deg(v) = (0, j); d_{q+l} lowers j at its lowest slot
          std::int64_t w = smp.uniform(1, smp.wmax);
          ExpVec kv = smp.random_expvec(w);
          v = Vec{};
          smp.add_term(v, {}, kv);
          for (std::int64_t extra = smp.uniform(0, 2); extra > 0; --extra) {
            std::int64_t w2 = smp.uniform(0, w - 1);
            ExpVec i2 = smp.random_expvec(smp.uniform(0, w2));
            ExpVec k2 = smp.random_expvec(w2 - weight(i2));
            if (i2.is_zero() && k2.is_zero()) continue;
            smp.add_term(v, i2, k2);
          }
          if (v.is_zero()) break;
          dg = deg_of(ind, v);
          if (!dg.first.is_zero() || dg.second.is_zero()) break;
          std::int64_t q = min_pos(dg.second);
          op = gen_d(q + l);
          expect = {ExpVec{}, *ev_sub(dg.second, eps(q))};
          ok = true;
          break;
        }
        case LemmaId::L34: {
          // deg'(v) = (i, j), j != 0; h_{p+k-1/2} lowers j
          std::int64_t w = smp.uniform(1, smp.wmax);
          ExpVec kv = smp.random_expvec(w);
          ExpVec iv = smp.random_expvec(smp.uniform(0, smp.wmax - 1));
          v = Vec{};
          smp.add_term(v, iv, kv);
          for (std::int64_t extra = smp.uniform(0, 2); extra > 0; --extra) {
            std::int64_t w2 = smp.uniform(0, w + weight(iv) - 1);
            ExpVec i2 = smp.random_expvec(smp.uniform(0, w2));
            ExpVec k2 = smp.random_expvec(w2 - weight(i2));
            if (i2.is_zero() && k2.is_zero()) continue;
            smp.add_term(v, i2, k2);
          }
          if (v.is_zero()) break;
          dg = deg_prime_of(ind, v);
          if (dg.second.is_zero()) break;
          std::int64_t p = min_pos(dg.second);
          op = gen_h2(2 * (p + k) - 1);
          expect = {dg.first, *ev_sub(dg.second, eps(p))};
          ok = true;
          break;
        }
        case LemmaId::L35:
          break;  // handled separately below
      }
      if (which == LemmaId::L35) {
        // deg'(v) = (i, 0); the operator depends on whether v has terms
        // in the (weight) window
        std::int64_t w = smp.uniform(1, smp.wmax);
        ExpVec iv = smp.random_expvec(w);
        v = Vec{};
        smp.add_term(v, iv, {});
        std::int64_t q_guess = min_pos(iv);
        if (smp.uniform(0, 1) == 1 && q_guess >= 1 && w >= 2) {
          // force a term with w(k)+w(l) = w(i), 1 <= w(l) <= q
          std::int64_t wl = smp.uniform(1, std::min(q_guess, w - 1));
          ExpVec lv = smp.random_expvec(wl);
          ExpVec kv2 = smp.random_expvec(w - wl);
          smp.add_term(v, kv2, lv);
        }
        for (std::int64_t extra = smp.uniform(0, 1); extra > 0; --extra) {
          std::int64_t w2 = smp.uniform(0, w - 1);
          ExpVec i2 = smp.random_expvec(smp.uniform(0, w2));
          ExpVec k2 = smp.random_expvec(w2 - weight(i2));
          if (i2.is_zero() && k2.is_zero()) continue;
          smp.add_term(v, i2, k2);
        }
        if (v.is_zero()) continue;
        dg = deg_prime_of(ind, v);
        if (!dg.second.is_zero() || dg.first.is_zero()) continue;
        std::int64_t q = min_pos(dg.first);
        std::int64_t wi = weight(dg.first);
        // (weight): w(k)+w(l) = w(i) and w(i)-q <= w(k) < w(i)
        bool has_window_term = false;
        Vec v_prime = v;
        for (const auto& [key, c] : v.terms) {
          auto [ik, kk, bk] = ind.split_key(key);
          std::int64_t wk = weight(ik), wl = weight(kk);
          if (wk + wl == wi && wi - q <= wk && wk < wi) has_window_term = true;
          if (wl == 0 && wk == wi) v_prime.add(key, -c);
        }
        if (!has_window_term) {
          op = gen_d(q + k + n - 1);
          expect = {*ev_sub(dg.first, eps(q)), ExpVec{}};
        } else {
          if (v_prime.is_zero()) continue;
          auto dgp = deg_prime_of(ind, v_prime);
          if (dgp.second.is_zero()) continue;
          std::int64_t t = min_pos(dgp.second);
          op = gen_h2(2 * (k + t) - 1);
          expect = {dgp.first, *ev_sub(dgp.second, eps(t))};
        }
        ok = true;
      }
      if (!ok) continue;

      Vec image = ind.act(op, v);
      ++rep.checked;
      if (image.is_zero()) {
        rep.fail({"lemma image vanished applying " + gen_token(op),
                  ind.describe(v), "0", describe_pair(expect)});
        return rep;
      }
      auto got = which == LemmaId::L32 || which == LemmaId::L33
                     ? deg_of(ind, image)
                     : deg_prime_of(ind, image);
      if (got != expect) {
        rep.fail({"deg mismatch applying " + gen_token(op), ind.describe(v),
                  describe_pair(got), describe_pair(expect)});
        return rep;
      }
      break;
    }
  }
  return rep;
}

InjectivityReport injectivity_probe(const ModuleHandle& m, const ProbeOp& op,
                                    std::int64_t trunc_n) {
  InjectivityReport rep;
  std::vector<BasisKey> keys = m.enumerate2(2 * trunc_n);
  rep.dimension_checked = static_cast<std::int64_t>(keys.size());
  if (m.graded()) {
    std::map<std::int64_t, std::vector<Vec>> slices;
    for (const auto& k : keys) slices[m.weight2(k)].push_back(unit_vec(k));
    for (const auto& [w2, basis] : slices) {
      auto ker = joint_kernel(m, {op}, basis);
      if (!ker.empty()) {
        rep.injective = false;
        rep.kernel_witness = ker.front();
        return rep;
      }
    }
    return rep;
  }
  std::vector<Vec> basis;
  for (const auto& k : keys) basis.push_back(unit_vec(k));
  auto ker = joint_kernel(m, {op}, basis);
  if (!ker.empty()) {
    rep.injective = false;
    rep.kernel_witness = ker.front();
  }
  return rep;
}

NilpotencyReport local_nilpotency_probe(const ModuleHandle& m, const Generator& g,
                                        const Vec& v, std::int64_t maxpow) {
  NilpotencyReport rep;
  Vec cur = v;
  for (std::int64_t p = 1; p <= maxpow; ++p) {
    cur = m.act(g, cur);
    if (cur.is_zero()) {
      rep.nilpotent_within_bound = true;
      rep.power = p;
      return rep;
    }
  }
  rep.power = maxpow;
  return rep;
}

SliceMatrix slice_matrix(const ModuleHandle& m, const Generator& g,
                         std::int64_t weight2, std::int64_t trunc_n) {
  SliceMatrix out;
  for (const auto& key : m.enumerate2(2 * trunc_n))
    if (m.weight2(key) == weight2) out.domain_basis.push_back(key);
  std::map<BasisKey, std::int64_t> image_index;
  std::vector<std::map<std::int64_t, Rat>> cols(out.domain_basis.size());
  for (size_t i = 0; i < out.domain_basis.size(); ++i) {
    Vec img = m.act_key(g, out.domain_basis[i]);
    for (const auto& [key, c] : img.terms) {
      auto [it, fresh] = image_index.emplace(
          key, static_cast<std::int64_t>(image_index.size()));
      if (fresh) out.image_basis.push_back(key);
      cols[i][it->second] = c;
    }
  }
  out.matrix = RatMatrix(static_cast<std::int64_t>(out.image_basis.size()),
                         static_cast<std::int64_t>(out.domain_basis.size()));
  for (size_t i = 0; i < cols.size(); ++i)
    for (const auto& [r, c] : cols[i]) out.matrix.set(r, i, c);
  return out;
}

}  // namespace hv
