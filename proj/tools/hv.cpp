// Command-line front end: exact brackets, PBW normalization, the
// verification suites, module constructions and probes. stdout carries
// exactly one JSON document; diagnostics go to stderr. Exit codes:
// 0 pass, 1 a verification found a counterexample, 2 bad input.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "hv/algebra.hpp"
#include "hv/carriers.hpp"
#include "hv/formulas.hpp"
#include "hv/linalg.hpp"
#include "hv/pbw.hpp"
#include "hv/probes.hpp"
#include "hv/spec_doc.hpp"
#include "hv/sugawara.hpp"

using nlohmann::json;
using namespace hv;

namespace {

int finish(const json& payload, bool pass) {
  json out = payload;
  out["status"] = pass ? "pass" : "fail";
  std::cout << out.dump(2) << "\n";
  return pass ? 0 : 1;
}

AlgebraKind kind_of(const std::string& s) {
  if (s == "mirror") return AlgebraKind::MirrorHV;
  if (s == "twisted") return AlgebraKind::TwistedHV;
  throw CLI::ValidationError("--algebra must be mirror or twisted");
}

Vec vec_argument(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return vec_from_json(json::parse(arg));
  std::ifstream in(arg);
  if (!in) throw std::invalid_argument("cannot open vector file " + arg);
  return vec_from_json(json::parse(in));
}

FormulaId formula_of(const std::string& s) {
  if (s == "3.1") return FormulaId::F31;
  if (s == "3.2") return FormulaId::F32;
  if (s == "3.3") return FormulaId::F33;
  if (s == "3.4") return FormulaId::F34;
  throw std::invalid_argument("--which must be one of 3.1, 3.2, 3.3, 3.4");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact kernel for the (mirror/twisted) Heisenberg-Virasoro algebras"};
  app.require_subcommand(1);

  std::string algebra = "mirror", x_tok, y_tok, word, spec_path, which, gen_tok;
  std::string vec_arg, family = "h", outfile;
  std::int64_t range = 3, t_max = 3, trunc = 6, scan_bound = 8, r_param = 0;
  std::int64_t samples = 50, maxpow = 10, weight2 = 0, lemma_n = 1, lemma_k = 1,
               lemma_l = 0, dprime_p = 0;
  std::uint64_t seed = 0;
  std::string z_str;
  bool use_dprime = false;
  bool inv_all = false;

  // ---- bracket
  auto* cmd_bracket = app.add_subcommand("bracket", "Lie bracket of two generators");
  cmd_bracket->add_option("--algebra", algebra);
  cmd_bracket->add_option("--x", x_tok)->required();
  cmd_bracket->add_option("--y", y_tok)->required();

  // ---- normalize
  auto* cmd_norm = app.add_subcommand("normalize", "PBW normal form of a word");
  cmd_norm->add_option("--algebra", algebra);
  cmd_norm->add_option("--word", word)->required();

  // ---- verify
  auto* cmd_verify = app.add_subcommand("verify", "verification suites");
  cmd_verify->require_subcommand(1);
  auto* v_jacobi = cmd_verify->add_subcommand("jacobi", "Jacobi identity sweep");
  v_jacobi->add_option("--range", range);
  v_jacobi->add_option("--algebra", algebra)->default_val("both");
  auto* v_formulas = cmd_verify->add_subcommand("formulas", "U(D) identities (3.1)-(3.4)");
  v_formulas->add_option("--range", range);
  v_formulas->add_option("--t", t_max);
  v_formulas->add_option("--which", which)->default_val("all");
  auto* v_sug = cmd_verify->add_subcommand("sugawara", "Sugawara relation sweep");
  v_sug->add_option("--spec", spec_path)->required();
  v_sug->add_option("--range", range);
  v_sug->add_option("--truncation", trunc)->default_val(-1);
  v_sug->add_option("--z", z_str);
  auto* v_app = cmd_verify->add_subcommand("appendix", "mode decomposition check");
  v_app->add_option("--spec", spec_path)->required();
  v_app->add_option("--range", range)->default_val(2);
  v_app->add_option("--truncation", trunc)->default_val(-1);

  // ---- module
  auto* cmd_module = app.add_subcommand("module", "module constructions");
  cmd_module->require_subcommand(1);
  auto* m_build = cmd_module->add_subcommand("build", "build and summarize");
  m_build->add_option("--spec", spec_path)->required();
  auto* m_act = cmd_module->add_subcommand("act", "apply a generator to a vector");
  m_act->add_option("--spec", spec_path)->required();
  m_act->add_option("--gen", gen_tok)->required();
  m_act->add_option("--vec", vec_arg)->required();
  auto* m_inv = cmd_module->add_subcommand("invariants", "n_S/m_S/r_S/n_M/r_M");
  m_inv->add_option("--spec", spec_path)->required();
  m_inv->add_option("--which", which)->required();
  m_inv->add_option("--truncation", trunc)->default_val(-1);
  m_inv->add_option("--scan-bound", scan_bound);
  m_inv->add_flag("--with-witness", inv_all);
  auto* m_dump = cmd_module->add_subcommand("dump-matrix", "slice action matrix");
  m_dump->add_option("--spec", spec_path)->required();
  m_dump->add_option("--gen", gen_tok)->required();
  m_dump->add_option("--weight2", weight2)->required();
  m_dump->add_option("--truncation", trunc)->default_val(-1);

  // ---- probe
  auto* cmd_probe = app.add_subcommand("probe", "diagnostic probes");
  cmd_probe->require_subcommand(1);
  auto* p_lemma = cmd_probe->add_subcommand("lemma", "degree-lowering lemma check");
  p_lemma->add_option("--which", which)->required();
  p_lemma->add_option("--spec", spec_path)->required();
  p_lemma->add_option("--n", lemma_n)->required();
  p_lemma->add_option("--k", lemma_k)->required();
  p_lemma->add_option("--l", lemma_l);
  p_lemma->add_option("--samples", samples);
  p_lemma->add_option("--seed", seed)->required();
  p_lemma->add_option("--truncation", trunc)->default_val(-1);
  auto* p_inj = cmd_probe->add_subcommand("injective", "per-slice kernel probe");
  p_inj->add_option("--spec", spec_path)->required();
  p_inj->add_option("--gen", gen_tok);
  p_inj->add_flag("--dprime", use_dprime);
  p_inj->add_option("--p", dprime_p);
  p_inj->add_option("--truncation", trunc)->default_val(-1);
  auto* p_nil = cmd_probe->add_subcommand("nilpotent", "local nilpotency probe");
  p_nil->add_option("--spec", spec_path)->required();
  p_nil->add_option("--gen", gen_tok)->required();
  p_nil->add_option("--vec", vec_arg)->required();
  p_nil->add_option("--maxpow", maxpow);
  auto* p_ann = cmd_probe->add_subcommand("annihilator", "joint annihilator basis");
  p_ann->add_option("--spec", spec_path)->required();
  p_ann->add_option("--family", family)->check(CLI::IsMember({"h", "vir", "dprime"}));
  p_ann->add_option("--r", r_param);
  p_ann->add_option("--truncation", trunc)->default_val(-1);

  CLI11_PARSE(app, argc, argv);

  auto started = std::chrono::steady_clock::now();
  auto duration_ms = [&]() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - started)
        .count();
  };

  try {
    // bracket ----------------------------------------------------------
    if (*cmd_bracket) {
      AlgebraKind kind = kind_of(algebra);
      LieElement b = bracket(kind, gen_parse(x_tok), gen_parse(y_tok));
      return finish({{"result", lie_to_json(b)}}, true);
    }
    // normalize --------------------------------------------------------
    if (*cmd_norm) {
      AlgebraKind kind = kind_of(algebra);
      NormalOrderer ord(kind);
      EnvElement e = ord.normal_form(parse_word(word));
      return finish({{"result", env_to_json(e)}}, true);
    }
    // verify jacobi ----------------------------------------------------
    if (*v_jacobi) {
      json out;
      bool pass = true;
      std::int64_t checked = 0;
      std::vector<AlgebraKind> kinds;
      if (algebra == "both")
        kinds = {AlgebraKind::MirrorHV, AlgebraKind::TwistedHV};
      else
        kinds = {kind_of(algebra)};
      for (AlgebraKind kind : kinds) {
        auto gens = generators_up_to(kind, range);
        for (const auto& gx : gens)
          for (const auto& gy : gens)
            for (const auto& gz : gens) {
              ++checked;
              if (!jacobi_defect(kind, gx, gy, gz).empty()) {
                pass = false;
                out["counterexample"] = {{"algebra", kind_name(kind)},
                                         {"x", gen_token(gx)},
                                         {"y", gen_token(gy)},
                                         {"z", gen_token(gz)}};
              }
            }
      }
      out["checked"] = checked;
      out["pass"] = pass;
      out["duration_ms"] = duration_ms();
      return finish(out, pass);
    }
    // verify formulas ----------------------------------------------------
    if (*v_formulas) {
      json out;
      bool pass = true;
      std::vector<std::string> names =
          which == "all" ? std::vector<std::string>{"3.1", "3.2", "3.3", "3.4"}
                         : std::vector<std::string>{which};
      for (const auto& name : names) {
        VerificationReport rep = verify_formula_sweep(formula_of(name), range, t_max);
        out["formula"][name] = report_to_json(rep);
        pass = pass && rep.pass;
      }
      out["duration_ms"] = duration_ms();
      return finish(out, pass);
    }
    // verify sugawara / appendix -----------------------------------------
    if (*v_sug || *v_app) {
      ModuleSpec spec = load_module_spec(spec_path);
      std::int64_t n = trunc >= 0 ? trunc : spec.truncation;
      VerificationReport rep;
      if (*v_sug) {
        std::optional<Rat> z;
        if (!z_str.empty()) z = rat_parse(z_str);
        rep = verify_sugawara_relations(*spec.module, range, n, z);
      } else {
        rep = appendix_decomposition_check(*spec.module, range, n);
      }
      json out = report_to_json(rep);
      out["duration_ms"] = duration_ms();
      return finish(out, rep.pass);
    }
    // module build -------------------------------------------------------
    if (*m_build) {
      ModuleSpec spec = load_module_spec(spec_path);
      auto keys = spec.module->enumerate2(2 * spec.truncation);
      json out{{"algebra", kind_name(spec.module->kind())},
               {"domain", spec.module->domain().name},
               {"graded", spec.module->graded()},
               {"truncation", spec.truncation},
               {"basis_size", keys.size()}};
      if (spec.module->graded()) {
        std::map<std::string, std::int64_t> dims;
        for (const auto& k : keys)
          ++dims[std::to_string(spec.module->weight2(k))];
        out["dimensions_by_weight2"] = dims;
      }
      auto level = spec.module->level();
      if (level) out["level"] = rat_str(*level);
      auto c = spec.module->central_value(GenTag::C1);
      if (c) out["central_charge"] = rat_str(*c);
      return finish(out, true);
    }
    // module act ---------------------------------------------------------
    if (*m_act) {
      ModuleSpec spec = load_module_spec(spec_path);
      Vec v = vec_argument(vec_arg);
      Vec out = spec.module->act(gen_parse(gen_tok), v);
      return finish({{"result", vec_to_json(out)},
                     {"printed", spec.module->describe(out)}},
                    true);
    }
    // module invariants ----------------------------------------------------
    if (*m_inv) {
      ModuleSpec spec = load_module_spec(spec_path);
      std::int64_t n = trunc >= 0 ? trunc : spec.truncation;
      InvariantReport rep = invariant(*spec.module, which, n, scan_bound);
      json out = invariant_to_json(rep);
      if (inv_all) {
        json w = json::array();
        for (const auto& v : rep.witness) w.push_back(vec_to_json(v));
        out["witness"] = w;
      }
      out["duration_ms"] = duration_ms();
      return finish(out, true);
    }
    // module dump-matrix ---------------------------------------------------
    if (*m_dump) {
      ModuleSpec spec = load_module_spec(spec_path);
      std::int64_t n = trunc >= 0 ? trunc : spec.truncation;
      SliceMatrix sm = slice_matrix(*spec.module, gen_parse(gen_tok), weight2, n);
      json entries = json::array();
      for (std::int64_t r = 0; r < sm.matrix.rows; ++r)
        for (const auto& [c, v] : sm.matrix.row_data[r])
          entries.push_back({r, c, rat_str(v)});
      return finish({{"rows", sm.matrix.rows},
                     {"cols", sm.matrix.cols},
                     {"entries", entries}},
                    true);
    }
    // probe lemma ----------------------------------------------------------
    if (*p_lemma) {
      ModuleSpec spec = load_module_spec(spec_path);
      DegreeLemmaConfig cfg;
      cfg.base = spec.module;
      cfg.n = lemma_n;
      cfg.k = lemma_k;
      cfg.l = lemma_l;
      cfg.samples = samples;
      cfg.seed = seed;
      cfg.trunc_n = trunc >= 0 ? trunc : spec.truncation;
      LemmaId id;
      if (which == "3.2")
        id = LemmaId::L32;
      else if (which == "3.3")
        id = LemmaId::L33;
      else if (which == "3.4")
        id = LemmaId::L34;
      else if (which == "3.5")
        id = LemmaId::L35;
      else
        throw std::invalid_argument("--which must be 3.2, 3.3, 3.4 or 3.5");
      VerificationReport rep = check_degree_lemma(id, cfg);
      json out = report_to_json(rep);
      out["duration_ms"] = duration_ms();
      return finish(out, rep.pass);
    }
    // probe injective --------------------------------------------------------
    if (*p_inj) {
      ModuleSpec spec = load_module_spec(spec_path);
      std::int64_t n = trunc >= 0 ? trunc : spec.truncation;
      ProbeOp op = use_dprime ? ProbeOp::of_dprime(dprime_p)
                              : ProbeOp::of_gen(gen_parse(gen_tok));
      InjectivityReport rep = injectivity_probe(*spec.module, op, n);
      json out{{"injective_on_scanned_slices", rep.injective},
               {"dimension_checked", rep.dimension_checked}};
      if (rep.kernel_witness) {
        out["kernel_witness"] = vec_to_json(*rep.kernel_witness);
        out["kernel_witness_printed"] = spec.module->describe(*rep.kernel_witness);
      }
      out["duration_ms"] = duration_ms();
      return finish(out, true);
    }
    // probe nilpotent ----------------------------------------------------------
    if (*p_nil) {
      ModuleSpec spec = load_module_spec(spec_path);
      NilpotencyReport rep = local_nilpotency_probe(
          *spec.module, gen_parse(gen_tok), vec_argument(vec_arg), maxpow);
      json out{{"nilpotent_within_bound", rep.nilpotent_within_bound},
               {"power", rep.power}};
      out["duration_ms"] = duration_ms();
      return finish(out, true);
    }
    // probe annihilator ----------------------------------------------------------
    if (*p_ann) {
      ModuleSpec spec = load_module_spec(spec_path);
      std::int64_t n = trunc >= 0 ? trunc : spec.truncation;
      GenFamily fam;
      fam.r = r_param;
      fam.type = family == "h"     ? GenFamily::Type::HeisTail
                 : family == "vir" ? GenFamily::Type::VirTail
                                   : GenFamily::Type::DPrimeTail;
      auto ann = annihilator(*spec.module, fam, n);
      json basis = json::array();
      for (const auto& v : ann) basis.push_back(vec_to_json(v));
      json out{{"family", fam.str()},
               {"dimension", ann.size()},
               {"basis", basis},
               {"truncation", n}};
      out["duration_ms"] = duration_ms();
      return finish(out, true);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cout << json{{"status", "error"}, {"error", e.what()}}.dump(2) << "\n";
    return 2;
  }
  return 2;
}
