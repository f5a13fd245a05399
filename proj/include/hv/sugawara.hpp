#pragma once

#include <optional>

#include "hv/module.hpp"
#include "hv/report.hpp"

namespace hv {

// Largest annihilation bound over the support of v (0 for v = 0).
std::int64_t vec_ann_bound2(const ModuleHandle& m, const Vec& v);

// Mirror Sugawara operator on a module with an h-action of level ell:
//   n != 0:  L_n = (1/(2 ell)) sum_{k in Z+1/2} h_{n-k} h_k
//   n  = 0:  L_0 = (1/(2 ell)) sum_{k in Z+1/2} h_{-|k|} h_{|k|} + 1/16
// The sum is finite on restricted vectors: h_{n-k} and h_k commute for
// n != 0, so a nonzero term needs both doubled indices <= the
// annihilation bound of v.
Vec sugawara_L(const ModuleHandle& m, std::int64_t n, const Rat& ell, const Vec& v);

// Twisted analogue:
//   Lbar_n = (1/(2 ell)) sum_{k in Z} :h_{n-k} h_k: + ((n+1) z / ell) h_n
// with :h_r h_s: ordering the smaller index left.
Vec sugawara_Lbar(const ModuleHandle& m, std::int64_t n, const Rat& ell,
                  const Rat& z, const Vec& v);

// Kind dispatch; level from the handle, z from the handle's c2
// assignment (twisted) unless overridden.
Vec sugawara(const ModuleHandle& m, std::int64_t n, const Vec& v,
             std::optional<Rat> z_override = std::nullopt);

// d'_n = d_n - L_n (mirror) or d_n - Lbar_n (twisted).
Vec d_prime(const ModuleHandle& m, std::int64_t n, const Vec& v);

// Exact operator-identity sweep applied to every basis vector of
// weight <= trunc_n - 2*range:
//  (i)  [L_n, h_r] = -r h_{n+r}   (+ delta_{n+r,0} (n^2+n) z, twisted)
//  (ii) Virasoro brackets for L with central scalar 1 (mirror) or
//       1 - 12 z^2/ell (twisted)
//  (iii) when an independent d-action is present: [d'_n, h_r] = 0 and
//       d' Virasoro with central scalar c - (Sugawara scalar).
VerificationReport verify_sugawara_relations(const ModuleHandle& m,
                                             std::int64_t range,
                                             std::int64_t trunc_n,
                                             std::optional<Rat> z_override = std::nullopt);

// The mode-level decomposition content: L^(1) := d - L commutes with
// every h_r and satisfies Virasoro with central charge c - (Sugawara
// scalar); requires a d-capable handle of nonzero level.
VerificationReport appendix_decomposition_check(const ModuleHandle& m,
                                                std::int64_t range,
                                                std::int64_t trunc_n);

}  // namespace hv
