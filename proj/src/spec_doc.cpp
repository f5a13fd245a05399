#include "hv/spec_doc.hpp"

#include <fstream>

namespace hv {

using nlohmann::json;

namespace {

AlgebraKind parse_kind(const std::string& s) {
  if (s == "mirror") return AlgebraKind::MirrorHV;
  if (s == "twisted") return AlgebraKind::TwistedHV;
  throw std::invalid_argument("unknown algebra '" + s + "'");
}

Params parse_params(const json& doc) {
  Params p;
  if (!doc.contains("params")) return p;
  for (const auto& [k, v] : doc.at("params").items())
    p.set(k, rat_parse(v.get<std::string>()));
  return p;
}

FilterSpec parse_filter(const json& j, AlgebraKind kind) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "full") return filter_full(kind);
    if (s == "vir") return filter_vir(kind);
    if (s == "heis") return filter_heis(kind);
    throw std::invalid_argument("unknown filter '" + s + "'");
  }
  std::string family = j.at("family").get<std::string>();
  if (family == "D")
    return filter_Dmn(kind, j.at("m").get<std::int64_t>(),
                      j.at("n").get<std::int64_t>());
  if (family == "Vir") return filter_vir_ge(kind, j.at("m").get<std::int64_t>());
  if (family == "Heis") return filter_heis_ge(kind, j.at("n").get<std::int64_t>());
  if (family == "D-inf") return filter_D_minf(kind, j.at("m").get<std::int64_t>());
  throw std::invalid_argument("unknown filter family '" + family + "'");
}

std::map<Generator, Rat> parse_chi(const json& j) {
  std::map<Generator, Rat> chi;
  for (const auto& [tok, val] : j.items())
    chi[gen_parse(tok)] = rat_parse(val.get<std::string>());
  return chi;
}

}  // namespace

ModuleSpec parse_module_spec(const nlohmann::json& doc,
                             std::optional<AlgebraKind> inherited) {
  AlgebraKind kind = inherited.value_or(AlgebraKind::MirrorHV);
  if (doc.contains("algebra"))
    kind = parse_kind(doc.at("algebra").get<std::string>());
  else if (!inherited)
    throw std::invalid_argument("module spec needs an \"algebra\" field");
  Params params = parse_params(doc);
  const json& c = doc.at("construction");
  std::string type = c.at("type").get<std::string>();

  ModuleSpec out;
  out.truncation = doc.value("truncation", std::int64_t{6});

  auto nested = [&](const char* field) {
    return parse_module_spec(c.at(field), kind);
  };

  if (type == "fock") {
    std::optional<Rat> mu;
    if (params.has("mu")) mu = params.get("mu");
    out.module = build_fock(kind, params.get("level"), mu);
  } else if (type == "poly") {
    std::vector<Rat> lambda, a;
    for (const auto& v : c.at("lambda")) lambda.push_back(rat_parse(v.get<std::string>()));
    for (const auto& v : c.at("a")) a.push_back(rat_parse(v.get<std::string>()));
    out.module = build_poly_module(c.at("n").get<std::int64_t>(),
                                   params.get("level"), std::move(lambda),
                                   std::move(a));
  } else if (type == "laurent") {
    out.module = build_laurent_module(kind, params,
                                      c.value("window", std::int64_t{10}));
  } else if (type == "character_induced") {
    out.module = build_character_induced(
        kind, parse_filter(c.at("inner"), kind), parse_chi(c.at("chi")),
        c.contains("outer") ? parse_filter(c.at("outer"), kind)
                            : filter_full(kind),
        2 * c.value("base_truncation", std::int64_t{0}));
  } else if (type == "induced") {
    ModuleSpec base = nested("base");
    out.module = build_induced(base.module,
                               c.contains("outer")
                                   ? parse_filter(c.at("outer"), kind)
                                   : filter_full(kind),
                               2 * base.truncation);
  } else if (type == "vir_trivial") {
    out.module = vir_trivial_extend(kind, nested("base").module);
  } else if (type == "sugawara") {
    out.module = sugawara_dress(nested("base").module, params.get("z"));
  } else if (type == "tensor") {
    out.module = build_tensor(nested("left").module, nested("right").module);
  } else if (type == "verma") {
    out.module = build_verma(kind, params.get("h"), params.get("c"),
                             params.get("level"), params.get("mu"),
                             params.get("z"));
  } else if (type == "vir_verma") {
    out.module = build_vir_verma(kind, params.get("h"), params.get("c"));
  } else {
    throw std::invalid_argument("unknown construction type '" + type + "'");
  }
  return out;
}

ModuleSpec load_module_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open spec file " + path);
  json doc = json::parse(in);
  return parse_module_spec(doc);
}

json vec_to_json(const Vec& v) {
  json terms = json::array();
  for (const auto& [key, c] : v.terms)
    terms.push_back({{"basis", key.v}, {"coeff", rat_str(c)}});
  return json{{"terms", terms}};
}

Vec vec_from_json(const json& j) {
  Vec v;
  for (const auto& t : j.at("terms")) {
    BasisKey key;
    for (const auto& x : t.at("basis")) key.v.push_back(x.get<std::int64_t>());
    v.add(key, rat_parse(t.at("coeff").get<std::string>()));
  }
  return v;
}

json lie_to_json(const LieElement& x) {
  json out = json::array();
  for (const auto& [g, c] : x) out.push_back({gen_token(g), rat_str(c)});
  return out;
}

json env_to_json(const EnvElement& e) {
  json out = json::array();
  for (const auto& [m, c] : e.terms) {
    json mono = json::array();
    for (const auto& [g, exp] : m.factors)
      mono.push_back({gen_token(g), exp});
    out.push_back({{"monomial", mono}, {"coeff", rat_str(c)}});
  }
  return out;
}

json report_to_json(const VerificationReport& rep) {
  json out{{"pass", rep.pass}, {"checked", rep.checked}};
  if (rep.counterexample) {
    out["counterexample"] = {{"identity", rep.counterexample->identity},
                             {"vector", rep.counterexample->vector},
                             {"lhs", rep.counterexample->lhs},
                             {"rhs", rep.counterexample->rhs}};
  } else {
    out["counterexample"] = nullptr;
  }
  return out;
}

json invariant_to_json(const InvariantReport& rep) {
  json out{{"name", rep.name}, {"truncation", rep.truncation}};
  switch (rep.kind) {
    case InvariantReport::Kind::Finite:
      out["value"] = rep.value;
      break;
    case InvariantReport::Kind::MinusInfinity:
      out["value"] = "-inf";
      break;
    case InvariantReport::Kind::Undetermined:
      out["value"] = "undetermined >= " + std::to_string(rep.value);
      break;
  }
  if (!rep.detail.empty()) out["detail"] = rep.detail;
  out["witness_dimension"] = rep.witness.size();
  return out;
}

}  // namespace hv
