#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hv/carriers.hpp"
#include "hv/expvec.hpp"
#include "hv/linalg.hpp"
#include "hv/module.hpp"
#include "hv/report.hpp"

namespace hv {

struct HypothesisViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A probe operator: a single generator or a shifted operator d'_p.
struct ProbeOp {
  Generator g;
  bool dprime = false;
  std::int64_t p = 0;

  static ProbeOp of_gen(const Generator& gen) { return {gen, false, 0}; }
  static ProbeOp of_dprime(std::int64_t p) { return {Generator{}, true, p}; }

  Vec apply(const ModuleHandle& m, const Vec& v) const;
  std::string str() const;
};

// Tail families of operators used by the annihilator probes: the
// non-central part of h^(r) or Vir^(r), or {d'_p : p >= r}. Members of
// degree beyond every annihilation bound of the domain act as zero and
// are not materialized.
struct GenFamily {
  enum class Type { HeisTail, VirTail, DPrimeTail };
  Type type;
  std::int64_t r;

  std::vector<ProbeOp> members(const ModuleHandle& m, std::int64_t max_bound2) const;
  std::string str() const;
};

// Exact joint kernel of the operators restricted to the span of the
// given vectors; results are coordinate combinations of `basis`.
std::vector<Vec> joint_kernel(const ModuleHandle& m,
                              const std::vector<ProbeOp>& ops,
                              const std::vector<Vec>& basis);

// Ann_M(family) within the enumerated carrier basis of budget trunc_n.
std::vector<Vec> annihilator(const ModuleHandle& m, const GenFamily& fam,
                             std::int64_t trunc_n);

struct InvariantReport {
  std::string name;
  enum class Kind { Finite, MinusInfinity, Undetermined } kind = Kind::Undetermined;
  std::int64_t value = 0;       // finite value, or the scanned bound
  std::vector<Vec> witness;     // basis of the detected subspace
  std::int64_t truncation = 0;
  std::string detail;
};

// which: n_S, m_S, r_S (mirror) / n_M, r_M (twisted). Scans r in
// [-scan_bound, scan_bound]; values are exact within the truncation.
InvariantReport invariant(const ModuleHandle& m, const std::string& which,
                          std::int64_t trunc_n, std::int64_t scan_bound);

// deg / deg': the <- / <'-maximal (i, k) in the support of a vector of
// an induced module in the h^i d^k (x) base shape.
std::pair<ExpVec, ExpVec> deg_of(const InducedModule& m, const Vec& v);
std::pair<ExpVec, ExpVec> deg_prime_of(const InducedModule& m, const Vec& v);

enum class LemmaId { L32, L33, L34, L35 };

struct DegreeLemmaConfig {
  ModulePtr base;       // a D^(0,-n)-module satisfying the lemma hypotheses
  std::int64_t n = 1;   // h-boundary of the base
  std::int64_t k = 1;   // injective mode h_{k-1/2}
  std::int64_t l = 0;   // d-annihilation bound (lemmas 3.3 / 3.5)
  std::int64_t samples = 50;
  std::uint64_t seed = 1;
  std::int64_t trunc_n = 6;       // sampling weight budget
  std::int64_t base_budget2 = 4;  // enumeration budget for base vectors
};

// Verifies the degree-lowering statement of the chosen lemma on seeded
// pseudorandom vectors of Ind(V) \ V. Hypotheses are gated first
// (HypothesisViolated names the failing one).
VerificationReport check_degree_lemma(LemmaId which, const DegreeLemmaConfig& cfg);

struct InjectivityReport {
  bool injective = true;
  std::int64_t dimension_checked = 0;
  std::optional<Vec> kernel_witness;
};

InjectivityReport injectivity_probe(const ModuleHandle& m, const ProbeOp& op,
                                    std::int64_t trunc_n);

struct NilpotencyReport {
  bool nilpotent_within_bound = false;
  std::int64_t power = 0;  // least p with g^p v = 0 when nilpotent
};

NilpotencyReport local_nilpotency_probe(const ModuleHandle& m, const Generator& g,
                                        const Vec& v, std::int64_t maxpow);

// Action matrix of a generator on one weight slice (graded carriers):
// columns indexed by the slice basis, rows by the appearing image keys.
struct SliceMatrix {
  std::vector<BasisKey> domain_basis;
  std::vector<BasisKey> image_basis;
  RatMatrix matrix;
};

SliceMatrix slice_matrix(const ModuleHandle& m, const Generator& g,
                         std::int64_t weight2, std::int64_t trunc_n);

}  // namespace hv
