#include "hv/sugawara.hpp"

#include <algorithm>

namespace hv {

namespace {

struct Failure {
  std::string identity;
  Vec vector, lhs, rhs;
};

// [h_a, h_b] = a delta_{a+b,0} level: the two factors of every quadratic
// term commute as module operators whenever n != 0, so a nonzero term
// h_{n-k} h_k v needs both h_k v != 0 and h_{n-k} v != 0. That bounds the
// doubled summation index k2 to [2n - K, K] for K the annihilation bound
// of v.
}  // namespace

std::int64_t vec_ann_bound2(const ModuleHandle& m, const Vec& v) {
  std::int64_t k = 0;
  for (const auto& [b, c] : v.terms)
    k = std::max(k, m.annihilation_bound2(b));
  return k;
}

Vec sugawara_L(const ModuleHandle& m, std::int64_t n, const Rat& ell, const Vec& v) {
  if (m.kind() != AlgebraKind::MirrorHV)
    throw KindMismatch("sugawara_L is the mirror operator");
  if (is_zero(ell)) throw ZeroLevel("sugawara_L: zero level");
  Vec out;
  if (v.is_zero()) return out;
  std::int64_t k_bound = vec_ann_bound2(m, v);
  if (n != 0) {
    std::int64_t lo = 2 * n - k_bound, hi = k_bound;
    for (std::int64_t k2 = lo % 2 == 0 ? lo + 1 : lo; k2 <= hi; k2 += 2) {
      Vec w1 = m.act(gen_h2(k2), v);
      if (w1.is_zero()) continue;
      out.add(m.act(gen_h2(2 * n - k2), w1));
    }
    return out.scaled(Rat(1) / (Rat(2) * ell));
  }
  // L_0 = (1/2l) sum_k h_{-|k|} h_{|k|} + 1/16, the k and -k terms equal
  for (std::int64_t k2 = 1; k2 <= k_bound; k2 += 2) {
    Vec w1 = m.act(gen_h2(k2), v);
    if (w1.is_zero()) continue;
    out.add(m.act(gen_h2(-k2), w1));
  }
  out = out.scaled(Rat(1) / ell);
  out.add(v, rat(1, 16));
  return out;
}

Vec sugawara_Lbar(const ModuleHandle& m, std::int64_t n, const Rat& ell,
                  const Rat& z, const Vec& v) {
  if (m.kind() != AlgebraKind::TwistedHV)
    throw KindMismatch("sugawara_Lbar is the twisted operator");
  if (is_zero(ell)) throw ZeroLevel("sugawara_Lbar: zero level");
  Vec out;
  if (v.is_zero()) return out;
  std::int64_t k_bound = vec_ann_bound2(m, v);
  Vec quad;
  if (n != 0) {
    std::int64_t lo = 2 * n - k_bound, hi = k_bound;
    for (std::int64_t k2 = lo % 2 == 0 ? lo : lo + 1; k2 <= hi; k2 += 2) {
      // :h_{n-k} h_k: applies the larger index first
      std::int64_t a2 = std::min(2 * n - k2, k2), b2 = std::max(2 * n - k2, k2);
      Vec w1 = m.act(gen_h2(b2), v);
      if (w1.is_zero()) continue;
      quad.add(m.act(gen_h2(a2), w1));
    }
  } else {
    quad = m.act(gen_h2(0), m.act(gen_h2(0), v));
    for (std::int64_t k2 = 2; k2 <= k_bound; k2 += 2) {
      Vec w1 = m.act(gen_h2(k2), v);
      if (w1.is_zero()) continue;
      quad.add(m.act(gen_h2(-k2), w1), Rat(2));
    }
  }
  out.add(quad, Rat(1) / (Rat(2) * ell));
  if (!is_zero(z)) out.add(m.act(gen_h2(2 * n), v), Rat(n + 1) * z / ell);
  return out;
}

Vec sugawara(const ModuleHandle& m, std::int64_t n, const Vec& v,
             std::optional<Rat> z_override) {
  Rat ell = m.require_level();
  if (m.kind() == AlgebraKind::MirrorHV) return sugawara_L(m, n, ell, v);
  Rat z = z_override ? *z_override : m.central_value(GenTag::C2).value_or(Rat(0));
  return sugawara_Lbar(m, n, ell, z, v);
}

Vec d_prime(const ModuleHandle& m, std::int64_t n, const Vec& v) {
  Vec out = m.act(gen_d(n), v);
  out.add(sugawara(m, n, v), Rat(-1));
  return out;
}

namespace {

// Shared sweep machinery for the relation checks.
struct RelationChecker {
  const ModuleHandle& m;
  std::int64_t range;
  std::optional<Rat> z_eff;  // z used for the L-side checks (twisted)
  VerificationReport rep;

  Rat ell = Rat(0);
  Rat kappa = Rat(1);  // Sugawara central scalar

  explicit RelationChecker(const ModuleHandle& mod, std::int64_t r,
                           std::optional<Rat> z_override)
      : m(mod), range(r) {
    ell = m.require_level();
    if (m.kind() == AlgebraKind::TwistedHV) {
      Rat z = z_override ? *z_override
                         : m.central_value(GenTag::C2).value_or(Rat(0));
      z_eff = z;
      kappa = Rat(1) - Rat(12) * z * z / ell;
    }
  }

  Vec L(std::int64_t n, const Vec& v) const { return sugawara(m, n, v, z_eff); }

  void expect(const std::string& identity, const Vec& basis_vec, const Vec& lhs,
              const Vec& rhs) {
    ++rep.checked;
    if (!(lhs == rhs))
      rep.fail({identity, m.describe(basis_vec), m.describe(lhs), m.describe(rhs)});
  }

  std::vector<std::int64_t> h_indices2() const {
    std::vector<std::int64_t> out;
    std::int64_t start = m.kind() == AlgebraKind::MirrorHV ? 1 : 0;
    for (std::int64_t r2 = -2 * range + start; r2 <= 2 * range; r2 += 2)
      if (r2 >= -2 * range) out.push_back(r2);
    return out;
  }

  void check_heis_relations(const Vec& v) {
    bool twisted = m.kind() == AlgebraKind::TwistedHV;
    for (std::int64_t n = -range; n <= range && rep.pass; ++n) {
      Vec lv = L(n, v);
      for (std::int64_t r2 : h_indices2()) {
        Vec lhs = L(n, m.act(gen_h2(r2), v));
        lhs.add(m.act(gen_h2(r2), lv), Rat(-1));
        Vec rhs = m.act(gen_h2(2 * n + r2), v).scaled(rat(-r2, 2));
        if (twisted && 2 * n + r2 == 0)
          rhs.add(v, Rat(n * n + n) * (*z_eff));
        expect("[L_" + std::to_string(n) + ", h_{" + std::to_string(r2) + "/2}]",
               v, lhs, rhs);
        if (!rep.pass) return;
      }
    }
  }

  void check_virasoro(const Vec& v) {
    for (std::int64_t mm = -range; mm <= range && rep.pass; ++mm)
      for (std::int64_t nn = mm + 1; nn <= range; ++nn) {
        Vec lhs = L(mm, L(nn, v));
        lhs.add(L(nn, L(mm, v)), Rat(-1));
        Vec rhs = L(mm + nn, v).scaled(rat(mm - nn));
        if (mm + nn == 0)
          rhs.add(v, rat(mm * mm * mm - mm, 12) * kappa);
        expect("[L_" + std::to_string(mm) + ", L_" + std::to_string(nn) + "]", v,
               lhs, rhs);
        if (!rep.pass) return;
      }
  }

  Vec dp(std::int64_t n, const Vec& v) const {
    Vec out = m.act(gen_d(n), v);
    out.add(L(n, v), Rat(-1));
    return out;
  }

  void check_dprime(const Vec& v) {
    auto c = m.central_value(GenTag::C1);
    for (std::int64_t n = -range; n <= range && rep.pass; ++n) {
      Vec dv = dp(n, v);
      for (std::int64_t r2 : h_indices2()) {
        Vec lhs = dp(n, m.act(gen_h2(r2), v));
        lhs.add(m.act(gen_h2(r2), dv), Rat(-1));
        expect("[d'_" + std::to_string(n) + ", h_{" + std::to_string(r2) + "/2}]",
               v, lhs, Vec{});
        if (!rep.pass) return;
      }
    }
    for (std::int64_t mm = -range; mm <= range && rep.pass; ++mm)
      for (std::int64_t nn = mm + 1; nn <= range; ++nn) {
        Vec lhs = dp(mm, dp(nn, v));
        lhs.add(dp(nn, dp(mm, v)), Rat(-1));
        Vec rhs = dp(mm + nn, v).scaled(rat(mm - nn));
        if (mm + nn == 0)
          rhs.add(v, rat(mm * mm * mm - mm, 12) * (*c - kappa));
        expect("[d'_" + std::to_string(mm) + ", d'_" + std::to_string(nn) + "]",
               v, lhs, rhs);
        if (!rep.pass) return;
      }
  }
};

}  // namespace

VerificationReport verify_sugawara_relations(const ModuleHandle& m,
                                             std::int64_t range,
                                             std::int64_t trunc_n,
                                             std::optional<Rat> z_override) {
  RelationChecker rc(m, range, z_override);
  std::int64_t budget2 = std::max<std::int64_t>(0, 2 * trunc_n - 4 * range);
  bool d_capable = m.accepts(gen_d(0)) && m.central_value(GenTag::C1).has_value();
  for (const auto& key : m.enumerate2(budget2)) {
    Vec v = unit_vec(key);
    rc.check_heis_relations(v);
    if (!rc.rep.pass) break;
    rc.check_virasoro(v);
    if (!rc.rep.pass) break;
    if (d_capable) {
      rc.check_dprime(v);
      if (!rc.rep.pass) break;
    }
  }
  return rc.rep;
}

VerificationReport appendix_decomposition_check(const ModuleHandle& m,
                                                std::int64_t range,
                                                std::int64_t trunc_n) {
  if (!m.accepts(gen_d(0)) || !m.central_value(GenTag::C1))
    throw KindMismatch(
        "appendix_decomposition_check needs a module with a d-action and "
        "assigned central charge");
  RelationChecker rc(m, range, std::nullopt);
  std::int64_t budget2 = std::max<std::int64_t>(0, 2 * trunc_n - 4 * range);
  for (const auto& key : m.enumerate2(budget2)) {
    rc.check_dprime(unit_vec(key));
    if (!rc.rep.pass) break;
  }
  return rc.rep;
}

}  // namespace hv
