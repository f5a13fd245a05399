#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hv/pbw.hpp"
#include "hv/report.hpp"

namespace hv {

struct BoundExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The four commutator identities in U(D) for the mirror algebra:
//   F31:  [h_{i-1/2}, h_{j1+1/2} ... h_{jt+1/2}]   (fully explicit)
//   F32:  [d_i,       h_{j1+1/2} ... h_{jt+1/2}]   (fully explicit)
//   F33:  [h_{i-1/2}, d_{j1} ... d_{jt}]           (tail coefficients free)
//   F34:  [d_i,       d_{j1} ... d_{jt}]           (tail coefficients free)
enum class FormulaId { F31, F32, F33, F34 };

// For F31/F32 the right side is reconstructed exactly and compared for
// equality in U(D). For F33/F34 the explicit single-deletion terms are
// subtracted and the remainder is required to be supported on the
// stated monomial shapes (>= 2 deletions, matching index sums) only.
//
// js must be sorted ascending; t_bound and index_bound gate the input
// (BoundExceeded otherwise).
VerificationReport verify_formula(FormulaId which, std::int64_t i,
                                  const std::vector<std::int64_t>& js,
                                  std::int64_t t_bound = 4,
                                  std::int64_t index_bound = 6);

// Sweep over all i in [-range, range] and all sorted js tuples with
// entries in [-range, range], 1 <= t <= t_max.
VerificationReport verify_formula_sweep(FormulaId which, std::int64_t range,
                                        std::int64_t t_max);

}  // namespace hv
