// Python bindings. Documents cross the boundary as JSON text in the same
// schema the CLI reads and writes; the hypersel package decodes them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hypersel/canonical.hpp"
#include "hypersel/chains.hpp"
#include "hypersel/documents.hpp"
#include "hypersel/error.hpp"
#include "hypersel/extension.hpp"
#include "hypersel/obstruction.hpp"
#include "hypersel/vietoris.hpp"

namespace py = pybind11;
using namespace hypersel;

namespace {

Json parse(const std::string& text) { return parse_document(text); }

std::string dump(const Json& j) { return j.dump(); }

Json optional_labels(const GroundSet& ground, const std::optional<Subset>& s) {
  return s ? subset_to_json(ground, *s) : Json();
}

Json certificate_json(const ObstructionCertificate& c) {
  return {{"m", c.m},
          {"p", c.p},
          {"binom", c.binom.str()},
          {"divisible_by_m", c.divisible_by_m},
          {"lucas_residue", c.lucas_residue},
          {"identity_holds", c.identity_holds},
          {"verdict", to_string(c.verdict)}};
}

std::string obstruction(std::int64_t m, std::int64_t p) {
  return dump(certificate_json(prime_obstruction_holds(m, p)));
}

std::string table(std::int64_t max_m) {
  Json rows = Json::array();
  for (const auto& r : obstruction_table(max_m)) {
    Json row = certificate_json(r.certificate);
    row["search_status"] = r.search_status;
    rows.push_back(std::move(row));
  }
  return dump(rows);
}

std::string search(int m, int n, std::uint64_t budget) {
  const auto r = search_regular(m, n, budget);
  return dump({{"status", to_string(r.status)},
               {"witness", r.witness ? to_json(*r.witness) : Json()},
               {"immediate", r.immediate},
               {"nodes", r.nodes}});
}

std::string enumerate(int m, int n, bool iso, std::uint64_t budget) {
  Json out = Json::array();
  for (const auto& s : enumerate_selections(m, n, iso, budget)) out.push_back(to_json(s));
  return dump(out);
}

std::string canonical(const std::string& doc) {
  return dump(to_json(canonical_form(selection_from_json(parse(doc))).structure));
}

std::string isomorphism(const std::string& a, const std::string& b) {
  const auto s = selection_from_json(parse(a));
  const auto t = selection_from_json(parse(b));
  const auto phi = are_isomorphic(s, t);
  if (!phi) return dump(Json());
  Json map = Json::object();
  for (int i = 0; i < s.size(); ++i) map[s.ground().label(i)] = t.ground().label((*phi)(i));
  return dump(map);
}

bool regular(const std::string& doc) { return is_regular(selection_from_json(parse(doc))); }

std::string extend(const std::string& doc, int m, int p, std::uint64_t budget) {
  const auto result = extend_selection(partial_selection_from_json(parse(doc)), m, p, budget);
  Json classes = Json::array();
  for (const auto& c : result.classes) {
    classes.push_back(
        {{"type", to_json(c.type)}, {"n", c.n}, {"r0", c.r0}, {"k0", c.k0}, {"size", c.size}});
  }
  return dump({{"selection", to_json(result.selection)}, {"classes", std::move(classes)}});
}

std::string continuity(const std::string& doc) {
  const auto model = model_from_json(parse(doc));
  const auto v = check_continuity(model);
  return dump({{"continuous", v.continuous},
               {"witness", optional_labels(model.selection().carrier(), v.witness)}});
}

bool intersect(const std::string& a, const std::string& b) {
  return intersect_nonempty(family_from_json(parse(a)), family_from_json(parse(b)));
}

std::string nice_doc(const std::string& doc) {
  const auto system = system_from_json(parse(doc));
  const auto v = is_nice(system);
  Json witness;
  if (v.witness) {
    witness = {{"condition", v.witness->condition},
               {"from", v.witness->from},
               {"to", v.witness->to},
               {"path", v.witness->path},
               {"expected", v.witness->expected},
               {"found", v.witness->found}};
  }
  Json components = Json::array();
  for (const auto& c : chain_classes(system)) components.push_back(c);
  return dump({{"nice", v.nice}, {"components", components}, {"witness", witness}});
}

std::string build(const std::string& doc) {
  const auto system = system_from_json(parse(doc));
  require(system.model.has_value(), ErrorCode::kInvalidArgument, "build needs a model");
  const auto built = build_selection_from_nice(system);
  const auto& ground = system.model->selection().carrier();
  Json values = Json::array();
  for (const auto& [x, v] : built.values) {
    values.push_back({{"subset", subset_to_json(ground, x)}, {"pick", ground.label(v)}});
  }
  Json uncovered = Json::array();
  for (Subset x : built.uncovered) uncovered.push_back(subset_to_json(ground, x));
  return dump({{"values", values}, {"uncovered", uncovered}});
}

std::string derive_doc(const std::string& doc, int n) {
  const auto model = model_from_json(parse(doc));
  const auto [system, detail] = derive_nice_family_detailed(model, n);
  const auto cover = regular_class_cover_check(system, n);
  Json families = Json::array();
  for (const auto& d : detail) {
    families.push_back({{"center", subset_to_json(model.selection().carrier(), d.center)},
                        {"radius", format_rational(d.radius)},
                        {"repairs", d.repairs}});
  }
  return dump({{"system", to_json(system)},
               {"families", families},
               {"nice", is_nice(system).nice},
               {"cover_ok", cover.ok}});
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "hypersel core bindings (JSON text in, JSON text out)";
  m.attr("__version__") = kToolVersion;

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object args = py::make_tuple(std::string(to_string(e.code())), e.what());
      PyErr_SetObject(error.ptr(), args.ptr());
    }
  });

  m.attr("default_budget") = kDefaultBudget;
  m.def("obstruction", &obstruction, py::arg("m"), py::arg("p"));
  m.def("obstruction_table", &table, py::arg("max_m"));
  m.def("search_regular", &search, py::arg("m"), py::arg("n"), py::arg("budget"));
  m.def("enumerate", &enumerate, py::arg("m"), py::arg("n"), py::arg("iso"), py::arg("budget"));
  m.def("canonical", &canonical, py::arg("doc"));
  m.def("isomorphism", &isomorphism, py::arg("a"), py::arg("b"));
  m.def("is_regular", &regular, py::arg("doc"));
  m.def("extend", &extend, py::arg("doc"), py::arg("m"), py::arg("p"), py::arg("budget"));
  m.def("check_continuity", &continuity, py::arg("doc"));
  m.def("intersect_nonempty", &intersect, py::arg("a"), py::arg("b"));
  m.def("is_nice", &nice_doc, py::arg("doc"));
  m.def("build", &build, py::arg("doc"));
  m.def("derive", &derive_doc, py::arg("doc"), py::arg("n"));
}
