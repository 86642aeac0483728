// Batch front end. Every run reads documents, writes one report (or table)
// and exits 0 (verified), 1 (refuted, with witness) or 2 (resource or
// precondition failure).

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hypersel/canonical.hpp"
#include "hypersel/chains.hpp"
#include "hypersel/documents.hpp"
#include "hypersel/error.hpp"
#include "hypersel/extension.hpp"
#include "hypersel/obstruction.hpp"
#include "hypersel/vietoris.hpp"

namespace {

using namespace hypersel;

enum Exit { kVerified = 0, kRefuted = 1, kFailure = 2 };

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::string output = "-";
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t seed = 0;
  std::string format;  // empty until resolved per command
  Json params = Json::object();

  Json to_json() const {
    Json c;
    c["command"] = command;
    c["inputs"] = inputs;
    c["output"] = output;
    c["budget"] = budget;
    c["seed"] = seed;
    c["format"] = format;
    c["params"] = params;
    return c;
  }
};

Json report_head(const RunConfig& cfg) {
  Json r;
  r["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  r["config"] = cfg.to_json();
  return r;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) fail(ErrorCode::kInvalidArgument, "cannot write " + cfg.output);
  out << text;
}

void emit(const RunConfig& cfg, const Json& report) { emit(cfg, report.dump(2) + "\n"); }

Json read_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kInvalidArgument, "cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_document(buffer.str());
}

// Accepts a bare system document or a derive report that carries one.
FamilySystem read_system(const std::string& path) {
  Json doc = read_document(path);
  if (doc.is_object() && doc.contains("tool") && doc.contains("result") &&
      doc["result"].contains("system")) {
    return system_from_json(doc["result"]["system"]);
  }
  return system_from_json(doc);
}

void require_json(const RunConfig& cfg) {
  require(cfg.format == "json", ErrorCode::kInvalidArgument,
          "command '" + cfg.command + "' writes json only");
}

Json labels_json(const GroundSet& ground, Subset s) { return subset_to_json(ground, s); }

// ------------------------------------------------------------------ commands

int cmd_enumerate(RunConfig& cfg, int m, int n, bool iso) {
  cfg.params = {{"m", m}, {"n", n}, {"up_to_iso", iso}};
  require(m >= 1 && n >= 1 && n <= m && m <= kMaxGround, ErrorCode::kInvalidArgument,
          "need 1 <= n <= m");
  const auto structures = enumerate_selections(m, n, iso, cfg.budget);
  if (cfg.format == "tsv") {
    std::ostringstream out;
    out << "index\tpicks\n";
    for (std::size_t i = 0; i < structures.size(); ++i) {
      out << i << '\t';
      auto picks = structures[i].picks();
      for (std::size_t r = 0; r < picks.size(); ++r) {
        out << (r ? "," : "") << structures[i].ground().label(picks[r]);
      }
      out << '\n';
    }
    emit(cfg, out.str());
    return kVerified;
  }
  Json report = report_head(cfg);
  Json records = Json::array();
  for (const auto& s : structures) records.push_back(to_json(s));
  report["result"] = {{"count", structures.size()}, {"structures", std::move(records)}};
  emit(cfg, report);
  return kVerified;
}

int cmd_obstruct(RunConfig& cfg, std::int64_t max_m) {
  cfg.params = {{"max_m", max_m}};
  const auto rows = obstruction_table(max_m);
  if (cfg.format == "tsv") {
    std::ostringstream out;
    write_obstruction_tsv(out, rows);
    emit(cfg, out.str());
    return kVerified;
  }
  Json report = report_head(cfg);
  Json out = Json::array();
  for (const auto& row : rows) {
    const auto& c = row.certificate;
    out.push_back({{"m", c.m},
                   {"p", c.p},
                   {"binom", c.binom.str()},
                   {"divisible", c.divisible_by_m},
                   {"lucas_residue", c.lucas_residue},
                   {"identity_holds", c.identity_holds},
                   {"verdict", to_string(c.verdict)},
                   {"search_status", row.search_status}});
  }
  report["result"] = {
      {"note", "certificate: m does not divide C(m,p), via C(m-1,p-1) = 1 mod p and "
               "p*C(m,p) = m*C(m-1,p-1); the prime p itself may divide C(m,p)"},
      {"rows", std::move(out)}};
  emit(cfg, report);
  return kVerified;
}

int cmd_extend(RunConfig& cfg, const std::string& input, int m, int p) {
  cfg.inputs = {input};
  cfg.params = {{"m", m}, {"p", p}};
  require_json(cfg);
  const auto f = partial_selection_from_json(read_document(input));
  const auto result = extend_selection(f, m, p, cfg.budget);
  Json report = report_head(cfg);

  const auto& h = result.selection;
  bool valid = true;
  Json table = Json::array();
  std::uint64_t rank = 0;
  const auto picks = h.table(m);
  for_each_subset(h.carrier().size(), m, [&](Subset x) {
    const int v = picks[rank++];
    valid = valid && contains(x, v);
    table.push_back({{"subset", labels_json(h.carrier(), x)}, {"pick", h.carrier().label(v)}});
  });
  Json classes = Json::array();
  for (const auto& c : result.classes) {
    classes.push_back({{"type", to_json(c.type)},
                       {"n", c.n},
                       {"r0", c.r0},
                       {"k0", c.k0},
                       {"size", c.size}});
  }
  report["result"] = {{"extended", true},
                      {"valid", valid},
                      {"entries", table.size()},
                      {"classes", std::move(classes)},
                      {"table", std::move(table)}};
  emit(cfg, report);
  return valid ? kVerified : kRefuted;
}

Json nice_witness_json(const FamilySystem& system, const NiceWitness& w) {
  Json j = {{"condition", w.condition}, {"from", w.from}, {"to", w.to}};
  j["from_family"] = to_json(system.families.at(w.from));
  j["to_family"] = to_json(system.families.at(w.to));
  if (w.condition == 2) {
    j["path"] = w.path;
    j["expected"] = w.expected;
    j["found"] = w.found;
  }
  return j;
}

Json components_json(const FamilySystem& system) {
  Json out = Json::array();
  for (const auto& c : chain_classes(system)) out.push_back(c);
  return out;
}

int cmd_check_nice(RunConfig& cfg, const std::string& input) {
  cfg.inputs = {input};
  require_json(cfg);
  const auto system = read_system(input);
  const auto verdict = is_nice(system);
  Json report = report_head(cfg);
  Json result = {{"nice", verdict.nice}, {"families", system.families.size()}};
  result["components"] = components_json(system);
  result["witness"] = verdict.witness ? nice_witness_json(system, *verdict.witness) : Json();
  if (system.model && verdict.nice && system.family_size() >= 1) {
    const int n = system.family_size() - 1;
    if (n >= 1 && system.model->selection().admits(2)) {
      const auto cover = regular_class_cover_check(system, n);
      const auto& ground = system.model->selection().carrier();
      result["cover"] = {{"ok", cover.ok},
                         {"witness", cover.witness ? labels_json(ground, *cover.witness) : Json()},
                         {"witness_regular", cover.witness_regular},
                         {"witness_covered", cover.witness_covered}};
    }
  }
  report["result"] = std::move(result);
  emit(cfg, report);
  return verdict.nice ? kVerified : kRefuted;
}

int cmd_build(RunConfig& cfg, const std::string& input) {
  cfg.inputs = {input};
  require_json(cfg);
  const auto system = read_system(input);
  require(system.model.has_value(), ErrorCode::kInvalidArgument, "build needs a model");
  const auto verdict = is_nice(system);
  Json report = report_head(cfg);
  if (!verdict.nice) {
    report["result"] = {{"nice", false}, {"witness", nice_witness_json(system, *verdict.witness)}};
    emit(cfg, report);
    return kRefuted;
  }
  const auto built = build_selection_from_nice(system);
  const auto& ground = system.model->selection().carrier();
  Json values = Json::array();
  for (const auto& [x, v] : built.values) {
    values.push_back({{"subset", labels_json(ground, x)}, {"pick", ground.label(v)}});
  }
  Json uncovered = Json::array();
  for (Subset x : built.uncovered) uncovered.push_back(labels_json(ground, x));
  Json bases = Json::array();
  for (const auto& b : built.bases) bases.push_back({{"family", b.family}, {"member", b.member}});
  report["result"] = {{"nice", true},
                      {"components", components_json(system)},
                      {"bases", std::move(bases)},
                      {"values", std::move(values)},
                      {"uncovered", std::move(uncovered)}};
  emit(cfg, report);
  return kVerified;
}

int cmd_derive(RunConfig& cfg, const std::string& input, int n) {
  cfg.inputs = {input};
  cfg.params = {{"n", n}};
  require_json(cfg);
  const auto model = model_from_json(read_document(input));
  const auto [system, detail] = derive_nice_family_detailed(model, n);
  const auto nice = is_nice(system);
  const auto cover = regular_class_cover_check(system, n);
  const auto& ground = model.selection().carrier();
  Json families = Json::array();
  for (const auto& d : detail) {
    families.push_back({{"center", labels_json(ground, d.center)},
                        {"radius", format_rational(d.radius)},
                        {"repairs", d.repairs}});
  }
  Json report = report_head(cfg);
  report["result"] = {
      {"nice", nice.nice},
      {"cover_ok", cover.ok},
      {"cover_witness", cover.witness ? labels_json(ground, *cover.witness) : Json()},
      {"families", std::move(families)},
      {"system", to_json(system)}};
  emit(cfg, report);
  return nice.nice && cover.ok ? kVerified : kRefuted;
}

int cmd_continuity(RunConfig& cfg, const std::string& input) {
  cfg.inputs = {input};
  require_json(cfg);
  const auto model = model_from_json(read_document(input));
  const auto verdict = check_continuity(model);
  Json report = report_head(cfg);
  const auto& ground = model.selection().carrier();
  report["result"] = {
      {"continuous", verdict.continuous},
      {"witness", verdict.witness ? labels_json(ground, *verdict.witness) : Json()}};
  emit(cfg, report);
  return verdict.continuous ? kVerified : kRefuted;
}

// Hypothesis failures are refutations of the request; everything else that
// stops a run is a resource or precondition failure.
int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kHypothesisViolated:
    case ErrorCode::kNotPrime:
    case ErrorCode::kPrimeInput:
      return kRefuted;
    default:
      return kFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification and construction engine for finite selection structures",
               kToolName};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--budget", cfg.budget, "work cap (table cells or search nodes)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "seed recorded in reports");
  app.add_option("--format", cfg.format, "json or tsv (obstruct defaults to tsv)")->check(CLI::IsMember({"json", "tsv"}));
  app.add_option("--output", cfg.output, "output path, - for stdout");

  int m = 0, n = 0, p = 0;
  std::int64_t max_m = 0;
  bool iso = false;
  std::string input;
  std::function<int()> run;

  auto* enumerate = app.add_subcommand("enumerate", "list selection structures");
  enumerate->add_option("m", m)->required();
  enumerate->add_option("n", n)->required();
  enumerate->add_flag("--iso", iso, "one representative per isomorphism class");
  enumerate->callback([&] {
    cfg.command = "enumerate";
    run = [&] { return cmd_enumerate(cfg, m, n, iso); };
  });

  auto* obstruct = app.add_subcommand("obstruct", "prime obstruction table");
  obstruct->add_option("max_m", max_m)->required();
  obstruct->callback([&] {
    cfg.command = "obstruct";
    if (cfg.format.empty()) cfg.format = "tsv";
    run = [&] { return cmd_obstruct(cfg, max_m); };
  });

  auto* extend = app.add_subcommand("extend", "extend a partial selection to m-subsets");
  extend->add_option("selection", input, "partial selection document")->required();
  extend->add_option("m", m)->required();
  extend->add_option("p", p)->required();
  extend->callback([&] {
    cfg.command = "extend";
    run = [&] { return cmd_extend(cfg, input, m, p); };
  });

  auto* chains = app.add_subcommand("chains", "nice family systems");
  chains->require_subcommand(1);
  auto* check_nice = chains->add_subcommand("check-nice", "verify niceness of a family system");
  check_nice->add_option("system", input)->required();
  check_nice->callback([&] {
    cfg.command = "chains check-nice";
    run = [&] { return cmd_check_nice(cfg, input); };
  });
  auto* build = chains->add_subcommand("build", "selection induced by a nice system");
  build->add_option("system", input)->required();
  build->callback([&] {
    cfg.command = "chains build";
    run = [&] { return cmd_build(cfg, input); };
  });
  auto* derive = chains->add_subcommand("derive", "nice system from a model selection");
  derive->add_option("model", input)->required();
  n = 2;
  derive->add_option("--n", n, "even arity; families have n+1 members");
  derive->callback([&] {
    cfg.command = "chains derive";
    run = [&] { return cmd_derive(cfg, input, n); };
  });

  auto* model = app.add_subcommand("model", "model spaces");
  model->require_subcommand(1);
  auto* continuity = model->add_subcommand("check-continuity", "continuity on the sample");
  continuity->add_option("model", input)->required();
  continuity->callback([&] {
    cfg.command = "model check-continuity";
    run = [&] { return cmd_continuity(cfg, input); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kFailure;
  }

  if (cfg.format.empty()) cfg.format = "json";
  try {
    return run();
  } catch (const Error& e) {
    const int code = exit_code_for(e.code());
    std::cerr << kToolName << ": " << e.what() << "\n";
    Json report = report_head(cfg);
    report["error"] = {{"code", to_string(e.code())}, {"message", e.what()}, {"exit", code}};
    try {
      emit(cfg, report);
    } catch (const Error&) {
    }
    return code;
  }
}
