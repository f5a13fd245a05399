#pragma once

#include <json.hpp>
#include <string>

#include "hv/carriers.hpp"
#include "hv/module.hpp"
#include "hv/pbw.hpp"
#include "hv/probes.hpp"
#include "hv/report.hpp"

namespace hv {

// Declarative module construction document:
//   {"algebra": "mirror"|"twisted",
//    "construction": {"type": ..., ...},
//    "params": {"level": "1", "c": "1/2", ...},
//    "truncation": 6}
// Nested constructions (induced bases, tensor factors) are full
// documents; "algebra" may be omitted and is inherited.
struct ModuleSpec {
  ModulePtr module;
  std::int64_t truncation = 6;
};

ModuleSpec parse_module_spec(const nlohmann::json& doc,
                             std::optional<AlgebraKind> inherited = std::nullopt);
ModuleSpec load_module_spec(const std::string& path);

nlohmann::json vec_to_json(const Vec& v);
Vec vec_from_json(const nlohmann::json& j);

nlohmann::json lie_to_json(const LieElement& x);
nlohmann::json env_to_json(const EnvElement& e);
nlohmann::json report_to_json(const VerificationReport& rep);
nlohmann::json invariant_to_json(const InvariantReport& rep);

}  // namespace hv
