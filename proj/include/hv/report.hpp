#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace hv {

// Outcome of a verification sweep. The counterexample fields are
// pre-rendered by the producer (monomial diffs, module vectors, ...).
struct Counterexample {
  std::string identity;
  std::string vector;
  std::string lhs;
  std::string rhs;
};

struct VerificationReport {
  bool pass = true;
  std::int64_t checked = 0;
  std::optional<Counterexample> counterexample;

  void fail(Counterexample ce) {
    if (pass) {
      pass = false;
      counterexample = std::move(ce);
    }
  }
};

}  // namespace hv
