#include "hypersel/documents.hpp"

#include <initializer_list>
#include <set>

#include "hypersel/error.hpp"

namespace hypersel {
namespace {

void expect_object(const Json& doc, std::initializer_list<const char*> required,
                   std::initializer_list<const char*> optional, const char* what) {
  require(doc.is_object(), ErrorCode::kMalformedDocument, std::string(what) + " must be an object");
  std::set<std::string> allowed;
  for (const char* k : required) {
    allowed.insert(k);
    require(doc.contains(k), ErrorCode::kMalformedDocument,
            std::string(what) + " lacks field '" + k + "'");
  }
  for (const char* k : optional) allowed.insert(k);
  for (const auto& [key, value] : doc.items()) {
    require(allowed.count(key) != 0, ErrorCode::kMalformedDocument,
            std::string(what) + " has unknown field '" + key + "'");
  }
}

std::vector<std::string> string_list(const Json& value, const char* what) {
  require(value.is_array(), ErrorCode::kMalformedDocument, std::string(what) + " must be a list");
  std::vector<std::string> out;
  for (const auto& item : value) {
    require(item.is_string(), ErrorCode::kMalformedDocument,
            std::string(what) + " entries must be strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

int integer(const Json& value, const char* what) {
  require(value.is_number_integer(), ErrorCode::kMalformedDocument,
          std::string(what) + " must be an integer");
  return value.get<int>();
}

std::vector<Choice> choices_from_json(const Json& value) {
  require(value.is_array(), ErrorCode::kMalformedDocument, "choices must be a list");
  std::vector<Choice> out;
  for (const auto& entry : value) {
    expect_object(entry, {"subset", "pick"}, {}, "choice");
    require(entry["pick"].is_string(), ErrorCode::kMalformedDocument, "pick must be a string");
    out.emplace_back(string_list(entry["subset"], "subset"), entry["pick"].get<std::string>());
  }
  return out;
}

Json choice_json(const GroundSet& ground, Subset s, int pick) {
  Json c;
  c["subset"] = subset_to_json(ground, s);
  c["pick"] = ground.label(pick);
  return c;
}

std::string mode_name(Mode mode) { return mode == Mode::kUpTo ? "upto" : "exact"; }

}  // namespace

Json subset_to_json(const GroundSet& ground, Subset s) {
  Json out = Json::array();
  for (const auto& l : ground.labels_of(s)) out.push_back(l);
  return out;
}

Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::kMalformedDocument, e.what());
  }
}

// ------------------------------------------------------ selection structure

Json to_json(const SelectionStructure& s) {
  Json doc;
  doc["ground"] = s.ground().labels();
  doc["n"] = s.arity();
  Json choices = Json::array();
  std::uint64_t rank = 0;
  for_each_subset(s.size(), s.arity(), [&](Subset x) {
    choices.push_back(choice_json(s.ground(), x, s.pick_at_rank(rank++)));
  });
  doc["choices"] = std::move(choices);
  return doc;
}

SelectionStructure selection_from_json(const Json& doc) {
  expect_object(doc, {"ground", "n", "choices"}, {}, "selection structure");
  GroundSet ground(string_list(doc["ground"], "ground"));
  const int n = integer(doc["n"], "n");
  const auto choices = choices_from_json(doc["choices"]);
  return make_selection(std::move(ground), n, choices);
}

// -------------------------------------------------------- partial selection

Json to_json(const PartialSelection& f) {
  Json doc;
  doc["carrier"] = f.carrier().labels();
  doc["mode"] = mode_name(f.mode());
  doc["bound"] = f.bound();
  Json choices = Json::array();
  for (int a : f.arities()) {
    const auto table = f.table(a);
    std::uint64_t rank = 0;
    for_each_subset(f.carrier().size(), a, [&](Subset x) {
      choices.push_back(choice_json(f.carrier(), x, table[rank++]));
    });
  }
  doc["choices"] = std::move(choices);
  return doc;
}

PartialSelection partial_selection_from_json(const Json& doc) {
  expect_object(doc, {"carrier", "mode", "bound", "choices"}, {}, "partial selection");
  GroundSet carrier(string_list(doc["carrier"], "carrier"));
  require(doc["mode"].is_string(), ErrorCode::kMalformedDocument, "mode must be a string");
  const std::string mode_text = doc["mode"].get<std::string>();
  require(mode_text == "upto" || mode_text == "exact", ErrorCode::kMalformedDocument,
          "mode must be \"upto\" or \"exact\"");
  const Mode mode = mode_text == "upto" ? Mode::kUpTo : Mode::kExact;
  const int bound = integer(doc["bound"], "bound");
  require(bound >= 1, ErrorCode::kInvalidArgument, "bound must be positive");
  const int m = carrier.size();

  std::vector<std::vector<int>> tables(bound + 1);
  for (int a = 1; a <= std::min(bound, m); ++a) {
    if (mode == Mode::kUpTo || a == bound) tables[a].assign(binomial(m, a), -1);
  }
  // Singletons have only one possible pick; documents may leave them out.
  if (mode == Mode::kUpTo || bound == 1) {
    for (int i = 0; i < m; ++i) tables[1][i] = i;
  }
  for (const auto& [labels, chosen] : choices_from_json(doc["choices"])) {
    Subset s = 0;
    for (const auto& l : labels) {
      const int idx = carrier.index_of(l);
      require(!contains(s, idx), ErrorCode::kInvalidArgument, "subset repeats label '" + l + "'");
      s |= singleton(idx);
    }
    const int a = cardinality(s);
    require(a >= 1 && a <= bound && (mode == Mode::kUpTo || a == bound),
            ErrorCode::kArityNotInDomain, "choice of size " + std::to_string(a) + " outside domain");
    auto pick = carrier.find(chosen);
    if (!pick || !contains(s, *pick)) {
      fail(ErrorCode::kChoiceOutsideSubset, "pick '" + chosen + "' is not in its subset");
    }
    int& slot = tables[a][subset_rank(s, m)];
    require(slot == -1 || slot == *pick, ErrorCode::kInvalidArgument,
            "subset listed twice with different picks");
    slot = *pick;
  }
  for (int a = 1; a <= bound; ++a) {
    for (int p : tables[a]) {
      require(p != -1, ErrorCode::kMissingSubset,
              "no choice for some subset of size " + std::to_string(a));
    }
  }
  return PartialSelection(std::move(carrier), mode, bound, std::move(tables));
}

// -------------------------------------------------------- families, models

Json to_json(const OpenFamily& family) {
  Json intervals = Json::array();
  for (const auto& v : family.members()) {
    Json iv;
    iv["lo"] = format_rational(v.lo());
    iv["hi"] = format_rational(v.hi());
    intervals.push_back(std::move(iv));
  }
  Json doc;
  doc["intervals"] = std::move(intervals);
  return doc;
}

OpenFamily family_from_json(const Json& doc) {
  expect_object(doc, {"intervals"}, {}, "family");
  require(doc["intervals"].is_array(), ErrorCode::kMalformedDocument, "intervals must be a list");
  std::vector<IntervalOpen> members;
  for (const auto& iv : doc["intervals"]) {
    expect_object(iv, {"lo", "hi"}, {}, "interval");
    require(iv["lo"].is_string() && iv["hi"].is_string(), ErrorCode::kMalformedDocument,
            "interval endpoints must be \"p/q\" strings");
    members.emplace_back(parse_rational(iv["lo"].get<std::string>()),
                         parse_rational(iv["hi"].get<std::string>()));
  }
  return OpenFamily(std::move(members));
}

Json to_json(const ModelSpace& model) {
  Json doc;
  Json points = Json::array();
  for (const auto& p : model.points()) points.push_back(format_rational(p));
  doc["points"] = std::move(points);
  doc["selection"] = to_json(model.selection());
  return doc;
}

ModelSpace model_from_json(const Json& doc) {
  expect_object(doc, {"points", "selection"}, {}, "model");
  std::vector<Rational> points;
  for (const auto& text : string_list(doc["points"], "points")) {
    points.push_back(parse_rational(text));
  }
  PartialSelection selection = partial_selection_from_json(doc["selection"]);
  const auto& carrier = selection.carrier();
  require(carrier.size() == static_cast<int>(points.size()), ErrorCode::kSizeMismatch,
          "selection carrier differs from the point list");
  for (int i = 0; i < carrier.size(); ++i) {
    require(parse_rational(carrier.label(i)) == points[i], ErrorCode::kMalformedDocument,
            "carrier label '" + carrier.label(i) + "' does not name point " + std::to_string(i));
  }
  return ModelSpace(std::move(points), std::move(selection));
}

Json to_json(const FamilySystem& system) {
  Json doc;
  Json families = Json::array();
  for (const auto& f : system.families) families.push_back(to_json(f));
  doc["families"] = std::move(families);
  if (system.model) doc["model"] = to_json(*system.model);
  return doc;
}

FamilySystem system_from_json(const Json& doc) {
  expect_object(doc, {"families"}, {"model"}, "family system");
  require(doc["families"].is_array(), ErrorCode::kMalformedDocument, "families must be a list");
  FamilySystem system;
  for (const auto& f : doc["families"]) system.families.push_back(family_from_json(f));
  if (doc.contains("model")) system.model = model_from_json(doc["model"]);
  validate_system(system);
  return system;
}

}  // namespace hypersel
