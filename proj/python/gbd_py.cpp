#include "gbd/cli.hpp"
#include "gbd/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>
#include <sstream>

namespace py = pybind11;
using namespace gbd;

namespace {

py::object to_py(const Integer& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max()) {
    return py::int_(static_cast<long long>(v));
  }
  return py::module_::import("builtins").attr("int")(v.str());
}

py::object to_py(const Rational& r) {
  return py::module_::import("fractions")
      .attr("Fraction")(to_py(numerator(r)), to_py(denominator(r)));
}

py::tuple to_py(const GroupElement& g) {
  py::tuple out(g.coords().size());
  for (std::size_t i = 0; i < g.coords().size(); ++i) out[i] = to_py(g.coords()[i]);
  return out;
}

py::list to_py(const FiniteElementSet& set) {
  py::list out;
  for (const auto& g : set) out.append(to_py(g));
  return out;
}

GroupElement element(const GroupDescriptor& group, const py::handle& coords) {
  std::vector<Integer> out;
  for (const auto& c : coords) out.push_back(parse_integer(py::str(c).cast<std::string>()));
  return group.element(std::move(out));
}

FiniteElementSet element_set(const GroupDescriptor& group, const py::iterable& items) {
  std::vector<GroupElement> out;
  for (const auto& g : items) out.push_back(element(group, g));
  return FiniteElementSet(std::move(out));
}

Side parse_side(const std::string& side) {
  if (side == "left") return Side::left;
  if (side == "right") return Side::right;
  throw ValidationError("side must be 'left' or 'right'");
}

py::object json_to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

TileProvider provider(const SubgroupChain& chain, std::size_t passes) {
  return canonical_tiles(chain, TransversalOptions{passes});
}

}  // namespace

PYBIND11_MODULE(_gbd, m) {
  m.doc() = "Tilings, odometers, groupoid certificates and invariant measures";

  auto validation = py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ExhaustedError>(m, "ExhaustedError", PyExc_RuntimeError);
  py::register_exception<SizeCapExceeded>(m, "SizeCapExceeded", PyExc_MemoryError);
  (void)validation;

  py::class_<GroupDescriptor>(m, "Group")
      .def(py::init([](const std::string& kind, std::size_t rank) {
             return GroupDescriptor(parse_group_kind(kind), rank);
           }),
           py::arg("kind"), py::arg("rank"))
      .def_static("lattice", &GroupDescriptor::lattice, py::arg("rank"))
      .def_static("heisenberg", &GroupDescriptor::heisenberg)
      .def_property_readonly("kind", [](const GroupDescriptor& g) { return to_string(g.kind()); })
      .def_property_readonly("rank", &GroupDescriptor::rank)
      .def_property_readonly("identity", [](const GroupDescriptor& g) { return to_py(g.identity()); })
      .def_property_readonly("generators",
                             [](const GroupDescriptor& g) {
                               py::list out;
                               for (const auto& s : g.generators()) out.append(to_py(s));
                               return out;
                             })
      .def("multiply",
           [](const GroupDescriptor& g, const py::tuple& a, const py::tuple& b) {
             return to_py(element(g, a) * element(g, b));
           })
      .def("inverse", [](const GroupDescriptor& g, const py::tuple& a) {
        return to_py(element(g, a).inverse());
      });

  py::class_<SubgroupChain>(m, "Chain")
      .def(py::init<GroupDescriptor, std::vector<std::uint64_t>>(), py::arg("group"),
           py::arg("moduli"))
      .def_property_readonly("depth", &SubgroupChain::depth)
      .def_property_readonly("moduli", &SubgroupChain::moduli)
      .def_property_readonly("group", &SubgroupChain::group)
      .def("index", &SubgroupChain::index, py::arg("level"))
      .def("modulus", &SubgroupChain::modulus, py::arg("level"))
      .def(
          "label",
          [](const SubgroupChain& c, const py::tuple& x, std::size_t level) {
            return c.label(element(c.group(), x), level);
          },
          py::arg("x"), py::arg("level"))
      .def(
          "act",
          [](const SubgroupChain& c, const py::tuple& g, Label label, std::size_t level) {
            return c.act(element(c.group(), g), label, level);
          },
          py::arg("g"), py::arg("label"), py::arg("level"));

  m.def(
      "folner_defect",
      [](const GroupDescriptor& g, const py::iterable& k, const py::tuple& s, const std::string& side) {
        return to_py(folner_defect(element_set(g, k), element(g, s), parse_side(side)));
      },
      py::arg("group"), py::arg("k"), py::arg("s"), py::arg("side") = "right");

  m.def(
      "s_boundary",
      [](const GroupDescriptor& g, const py::iterable& s, const py::iterable& k) {
        return to_py(s_boundary(element_set(g, s), element_set(g, k)));
      },
      py::arg("group"), py::arg("s"), py::arg("k"));

  m.def(
      "build_tile",
      [](const SubgroupChain& c, std::size_t level, std::size_t passes) {
        return to_py(provider(c, passes)(level).elements());
      },
      py::arg("chain"), py::arg("level"), py::arg("improvement_passes") = 4);

  m.def(
      "verify_tiling",
      [](const SubgroupChain& c, const py::iterable& k, std::size_t level) -> py::object {
        const auto check = verify_tiling(element_set(c.group(), k), level, c);
        if (check) return py::none();
        return py::str(check.failure->describe());
      },
      py::arg("chain"), py::arg("k"), py::arg("level"),
      "None for a valid tile, otherwise a description of the failure.");

  m.def(
      "refine",
      [](const SubgroupChain& c, std::size_t small_level, std::size_t big_level, std::size_t passes) {
        const auto tiles = provider(c, passes);
        const Tile small = tiles(small_level);
        const Tile big = tiles(big_level);
        const Tile refined = refine_tile(small, big, c);
        const auto check = check_refinement(small, big, refined, c);
        py::dict out;
        out["refined"] = to_py(refined.elements());
        out["centers"] = to_py(tiling_centers(big, small_level, c));
        out["ok"] = check.all();
        out["boundary_inclusion"] = check.boundary_inclusion;
        return out;
      },
      py::arg("chain"), py::arg("small_level"), py::arg("big_level"),
      py::arg("improvement_passes") = 4);

  m.def(
      "odometer_orbit",
      [](const SubgroupChain& c, const py::tuple& g, std::size_t steps, std::size_t depth) {
        py::list out;
        for (const auto& p : odometer_orbit(element(c.group(), g), steps, depth, c)) {
          out.append(py::cast(p.labels()));
        }
        return out;
      },
      py::arg("chain"), py::arg("generator"), py::arg("steps"), py::arg("depth"));

  m.def(
      "certificate",
      [](const SubgroupChain& c, const std::string& compact_set, std::uint64_t mult,
         std::size_t passes) {
        const auto set = parse_compact_set(compact_set, c);
        const auto nested = nest_all_levels(c, provider(c, passes));
        return json_to_py(to_json(almost_af_certificate(set, mult, nested, c)));
      },
      py::arg("chain"), py::arg("compact_set"), py::arg("m"), py::arg("improvement_passes") = 4,
      "Certificate for a patch listing ('level label mover...' per line), as a dict.");

  m.def(
      "solve_invariant_measure",
      [](const SubgroupChain& c, std::size_t level, const py::iterable& generators) {
        std::vector<GroupElement> gens;
        for (const auto& g : generators) gens.push_back(element(c.group(), g));
        const auto solution = solve_invariant_measure(level, gens, c);
        py::list masses;
        for (const auto& r : solution.measure.masses()) masses.append(to_py(r));
        py::dict out;
        out["masses"] = masses;
        out["unique"] = solution.unique;
        out["classes"] = py::cast(solution.classes);
        return out;
      },
      py::arg("chain"), py::arg("level"), py::arg("generators"));

  m.def(
      "af_chain_report",
      [](const SubgroupChain& c, const std::string& format, std::size_t passes) {
        return emit_report(af_chain_report(nest_all_levels(c, provider(c, passes)), c),
                           parse_format(format));
      },
      py::arg("chain"), py::arg("format") = "json", py::arg("improvement_passes") = 4,
      "AF-chain report over every level of the chain, as emitted text.");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"gbd"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out;
        std::ostringstream err;
        const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line front end; returns (exit code, stdout, stderr).");
}
