#include "gbd/report.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace gbd {

using nlohmann::json;

namespace {

constexpr const char* infinity_marker = "inf";

json integer_to_json(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(v);
  }
  return v.str();
}

Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw ValidationError("expected an integer, got " + j.dump());
}

json rational_to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const json& j) {
  if (!j.is_string()) throw ValidationError("expected a \"p/q\" string, got " + j.dump());
  return parse_rational(j.get<std::string>());
}

json rationals_to_json(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(rational_to_json(r));
  return out;
}

std::vector<Rational> rationals_from_json(const json& j) {
  std::vector<Rational> out;
  for (const auto& r : j) out.push_back(rational_from_json(r));
  return out;
}

json group_to_json(GroupSignature sig) {
  return {{"kind", to_string(sig.kind)}, {"rank", sig.rank}};
}

GroupSignature group_from_json(const json& j) {
  return {parse_group_kind(j.at("kind").get<std::string>()), j.at("rank").get<std::size_t>()};
}

json elements_to_json(const FiniteElementSet& set) {
  json out = json::array();
  for (const auto& g : set) out.push_back(to_json(g));
  return out;
}

FiniteElementSet elements_from_json(const json& j, GroupKind kind) {
  std::vector<GroupElement> out;
  for (const auto& g : j) out.push_back(element_from_json(g, kind));
  return FiniteElementSet(std::move(out));
}

json groupoid_set_to_json(const CompactGroupoidSet& set) {
  json patches = json::array();
  for (const auto& p : set.patches()) {
    patches.push_back({{"base", p.base.labels()}, {"mover", to_json(p.mover)}});
  }
  return {{"level", set.level()}, {"patches", std::move(patches)}};
}

CompactGroupoidSet groupoid_set_from_json(const json& j, const SubgroupChain& chain) {
  const auto level = j.at("level").get<std::size_t>();
  std::vector<ArrowPatch> patches;
  for (const auto& p : j.at("patches")) {
    patches.push_back({ClopenSet(level, p.at("base").get<std::vector<Label>>()),
                       element_from_json(p.at("mover"), chain.group().kind())});
  }
  return {std::move(patches), chain};
}

std::string selection_name(const NestedTileChain& nested) {
  if (nested.epsilons.empty()) return "all-levels";
  return nested.rule == AcceptanceRule::measured ? "measured" : "third-prescreen";
}

// Left-aligned text table.
class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string render() const {
    std::vector<std::size_t> width;
    for (const auto& row : rows_) {
      width.resize(std::max(width.size(), row.size()), 0);
      for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    }
    std::ostringstream out;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      std::string line;
      for (std::size_t i = 0; i < rows_[r].size(); ++i) {
        if (i) line += "  ";
        line += rows_[r][i];
        if (i + 1 < rows_[r].size()) line += std::string(width[i] - rows_[r][i].size(), ' ');
      }
      out << line << '\n';
      if (r == 0) {
        std::size_t total = 0;
        for (std::size_t i = 0; i < width.size(); ++i) total += width[i] + (i ? 2 : 0);
        out << std::string(total, '-') << '\n';
      }
    }
    return out.str();
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

std::string join(const std::vector<std::uint64_t>& v, const char* sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

std::string yes_no(bool b) { return b ? "yes" : "NO"; }

}  // namespace

std::vector<std::pair<std::uint64_t, std::uint64_t>> factorize(std::uint64_t value) {
  if (value == 0) throw ValidationError("cannot factorize 0");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t p = 2; p <= value / p; ++p) {
    std::uint64_t e = 0;
    while (value % p == 0) {
      value /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (value > 1) out.emplace_back(value, 1);
  return out;
}

AFChainReport af_chain_report(const NestedTileChain& nested, const SubgroupChain& chain) {
  AFChainReport out;
  out.group = chain.group().signature();
  out.moduli = chain.moduli();
  out.selection = selection_name(nested);
  out.epsilons = nested.epsilons;
  for (const auto& lv : nested.levels) {
    LevelSummary s{lv.level, chain.modulus(lv.level), chain.index(lv.level), lv.tile.size(), {}};
    if (s.tile_size != s.index) throw std::logic_error("af_chain_report: tile is not a transversal");
    for (const auto& g : nested.selection_set) {
      s.defects.push_back({g, folner_defect(lv.tile.elements(), g, Side::left),
                           folner_defect(lv.tile.elements(), g, Side::right)});
    }
    out.levels.push_back(std::move(s));
  }
  for (std::size_t k = 0; k + 1 < out.levels.size(); ++k) {
    const auto& a = out.levels[k];
    const auto& b = out.levels[k + 1];
    if (b.index % a.index != 0 || b.tile_size % a.tile_size != 0 ||
        b.index / a.index != b.tile_size / a.tile_size) {
      throw std::logic_error("af_chain_report: multiplicity does not match the tile sizes");
    }
    out.multiplicities.push_back(b.index / a.index);
  }
  if (out.group.kind == GroupKind::lattice && out.group.rank == 1 && !out.levels.empty()) {
    std::vector<SupernaturalFactor> factors;
    const auto recurring =
        out.multiplicities.empty() ? std::vector<std::pair<std::uint64_t, std::uint64_t>>{}
                                   : factorize(out.multiplicities.back());
    for (const auto& [p, e] : factorize(out.levels.back().index)) {
      const bool grows = std::any_of(recurring.begin(), recurring.end(),
                                     [&](const auto& f) { return f.first == p; });
      factors.push_back({p, grows ? std::nullopt : std::optional<std::uint64_t>(e)});
    }
    out.supernatural = std::move(factors);
  }
  return out;
}

MeasureReport measure_report(std::size_t level, std::span<const GroupElement> generators,
                             Label target_label, const NestedTileChain& nested,
                             const SubgroupChain& chain) {
  auto solution = solve_invariant_measure(level, generators, chain);
  MeasureReport out;
  out.group = chain.group().signature();
  out.moduli = chain.moduli();
  out.level = level;
  out.generators.assign(generators.begin(), generators.end());
  out.unique = solution.unique;
  out.masses = solution.measure.masses();
  out.classes = std::move(solution.classes);
  out.trace = std::move(solution.trace);
  out.target_label = target_label;

  const ClopenSet target(level, {target_label});
  const auto f = indicator(target, chain);
  const auto x0 = embed_point(chain.group().identity(), level, chain);
  const Rational haar = haar_mass(target, chain);
  for (const auto& lv : nested.levels) {
    const Rational avg = birkhoff_average(f, level, lv.tile.elements(), x0, chain);
    out.birkhoff.push_back({lv.level, lv.tile.size(), avg, haar, abs(avg - haar)});
  }
  return out;
}

Format parse_format(std::string_view name) {
  if (name == "json") return Format::json;
  if (name == "text") return Format::text;
  throw ValidationError("unknown format '" + std::string(name) + "'");
}

json to_json(const GroupElement& g) {
  json out = json::array();
  for (const auto& c : g.coords()) out.push_back(integer_to_json(c));
  return out;
}

GroupElement element_from_json(const json& j, GroupKind kind) {
  if (!j.is_array()) throw ValidationError("expected a coordinate array, got " + j.dump());
  std::vector<Integer> coords;
  for (const auto& c : j) coords.push_back(integer_from_json(c));
  return {kind, std::move(coords)};
}

json to_json(const AFChainReport& r) {
  json levels = json::array();
  for (const auto& lv : r.levels) {
    json defects = json::array();
    for (const auto& d : lv.defects) {
      defects.push_back({{"generator", to_json(d.generator)},
                         {"left", rational_to_json(d.left)},
                         {"right", rational_to_json(d.right)}});
    }
    levels.push_back({{"level", lv.level},
                      {"modulus", lv.modulus},
                      {"index", lv.index},
                      {"tile_size", lv.tile_size},
                      {"defects", std::move(defects)}});
  }
  json supernatural = nullptr;
  if (r.supernatural) {
    supernatural = json::object();
    for (const auto& f : *r.supernatural) {
      supernatural[std::to_string(f.prime)] =
          f.exponent ? json(*f.exponent) : json(infinity_marker);
    }
  }
  return {{"group", group_to_json(r.group)},
          {"chain", r.moduli},
          {"selection", r.selection},
          {"epsilons", rationals_to_json(r.epsilons)},
          {"levels", std::move(levels)},
          {"multiplicities", r.multiplicities},
          {"supernatural", std::move(supernatural)}};
}

json to_json(const GraphCertificate& c) {
  json sigma = json::array();
  for (const auto& map : c.sigma) {
    json entries = json::array();
    for (const auto& [from, to] : map) entries.push_back({{"from", to_json(from)}, {"to", to_json(to)}});
    sigma.push_back(std::move(entries));
  }
  json graphs = json::array();
  for (const auto& g : c.graphs) graphs.push_back(groupoid_set_to_json(g));
  const auto& b = c.bounds;
  const auto& v = c.validation;
  return {{"group", group_to_json(c.group)},
          {"chain", c.moduli},
          {"level", c.level},
          {"m", b.m},
          {"tile", elements_to_json(c.tile)},
          {"movers", elements_to_json(c.movers)},
          {"K", elements_to_json(c.k)},
          {"sigma", std::move(sigma)},
          {"graphs", std::move(graphs)},
          {"input", groupoid_set_to_json(c.input)},
          {"bounds",
           {{"k_size", b.k_size},
            {"sum_differences", b.sum_differences},
            {"max_symmetric_difference", b.max_symmetric_difference},
            {"mover_count", b.mover_count},
            {"tile_size", b.tile_size},
            {"m", b.m}}},
          {"validation",
           {{"sources_equal", v.sources_equal},
            {"ranges_disjoint", v.ranges_disjoint},
            {"graphs", v.graphs},
            {"inside_Gn", v.inside_Gn},
            {"inequality_chain", v.inequality_chain}}}};
}

json to_json(const MeasureReport& r) {
  json generators = json::array();
  for (const auto& g : r.generators) generators.push_back(to_json(g));
  json trace = json::array();
  for (const auto& step : r.trace) {
    trace.push_back({{"label", step.label},
                     {"from", step.from ? json(*step.from) : json(nullptr)},
                     {"generator", step.generator}});
  }
  json birkhoff = json::array();
  for (const auto& row : r.birkhoff) {
    birkhoff.push_back({{"window_level", row.window_level},
                        {"window_size", row.window_size},
                        {"average", rational_to_json(row.average)},
                        {"haar", rational_to_json(row.haar)},
                        {"deviation", rational_to_json(row.deviation)}});
  }
  return {{"group", group_to_json(r.group)},
          {"chain", r.moduli},
          {"level", r.level},
          {"generators", std::move(generators)},
          {"unique", r.unique},
          {"masses", rationals_to_json(r.masses)},
          {"classes", r.classes},
          {"trace", std::move(trace)},
          {"target_label", r.target_label},
          {"birkhoff", std::move(birkhoff)}};
}

AFChainReport parse_af_chain_report(std::string_view text) {
  const json j = json::parse(text);
  AFChainReport r;
  r.group = group_from_json(j.at("group"));
  r.moduli = j.at("chain").get<std::vector<std::uint64_t>>();
  r.selection = j.at("selection").get<std::string>();
  r.epsilons = rationals_from_json(j.at("epsilons"));
  for (const auto& lv : j.at("levels")) {
    LevelSummary s{lv.at("level").get<std::size_t>(), lv.at("modulus").get<std::uint64_t>(),
                   lv.at("index").get<std::uint64_t>(), lv.at("tile_size").get<std::uint64_t>(),
                   {}};
    for (const auto& d : lv.at("defects")) {
      s.defects.push_back({element_from_json(d.at("generator"), r.group.kind),
                           rational_from_json(d.at("left")), rational_from_json(d.at("right"))});
    }
    r.levels.push_back(std::move(s));
  }
  r.multiplicities = j.at("multiplicities").get<std::vector<std::uint64_t>>();
  if (!j.at("supernatural").is_null()) {
    std::vector<SupernaturalFactor> factors;
    for (const auto& [prime, exponent] : j.at("supernatural").items()) {
      SupernaturalFactor f{std::stoull(prime), std::nullopt};
      if (!exponent.is_string()) f.exponent = exponent.get<std::uint64_t>();
      factors.push_back(f);
    }
    std::sort(factors.begin(), factors.end(),
              [](const auto& a, const auto& b) { return a.prime < b.prime; });
    r.supernatural = std::move(factors);
  }
  return r;
}

GraphCertificate parse_graph_certificate(std::string_view text) {
  const json j = json::parse(text);
  GraphCertificate c;
  c.group = group_from_json(j.at("group"));
  c.moduli = j.at("chain").get<std::vector<std::uint64_t>>();
  const SubgroupChain chain(GroupDescriptor(c.group.kind, c.group.rank), c.moduli);
  const GroupKind kind = c.group.kind;
  c.level = j.at("level").get<std::size_t>();
  c.tile = elements_from_json(j.at("tile"), kind);
  c.movers = elements_from_json(j.at("movers"), kind);
  c.k = elements_from_json(j.at("K"), kind);
  for (const auto& map : j.at("sigma")) {
    std::vector<std::pair<GroupElement, GroupElement>> entries;
    for (const auto& e : map) {
      entries.emplace_back(element_from_json(e.at("from"), kind), element_from_json(e.at("to"), kind));
    }
    c.sigma.push_back(std::move(entries));
  }
  for (const auto& g : j.at("graphs")) c.graphs.push_back(groupoid_set_from_json(g, chain));
  c.input = groupoid_set_from_json(j.at("input"), chain);
  const auto& b = j.at("bounds");
  c.bounds = {b.at("k_size").get<std::uint64_t>(),
              b.at("sum_differences").get<std::uint64_t>(),
              b.at("max_symmetric_difference").get<std::uint64_t>(),
              b.at("mover_count").get<std::uint64_t>(),
              b.at("tile_size").get<std::uint64_t>(),
              b.at("m").get<std::uint64_t>()};
  const auto& v = j.at("validation");
  c.validation = {v.at("sources_equal").get<bool>(), v.at("ranges_disjoint").get<bool>(),
                  v.at("graphs").get<bool>(), v.at("inside_Gn").get<bool>(),
                  v.at("inequality_chain").get<bool>()};
  return c;
}

MeasureReport parse_measure_report(std::string_view text) {
  const json j = json::parse(text);
  MeasureReport r;
  r.group = group_from_json(j.at("group"));
  r.moduli = j.at("chain").get<std::vector<std::uint64_t>>();
  r.level = j.at("level").get<std::size_t>();
  for (const auto& g : j.at("generators")) r.generators.push_back(element_from_json(g, r.group.kind));
  r.unique = j.at("unique").get<bool>();
  r.masses = rationals_from_json(j.at("masses"));
  r.classes = j.at("classes").get<std::vector<std::vector<Label>>>();
  for (const auto& step : j.at("trace")) {
    OrbitStep s{step.at("label").get<Label>(), std::nullopt, step.at("generator").get<std::size_t>()};
    if (!step.at("from").is_null()) s.from = step.at("from").get<Label>();
    r.trace.push_back(s);
  }
  r.target_label = j.at("target_label").get<Label>();
  for (const auto& row : j.at("birkhoff")) {
    r.birkhoff.push_back({row.at("window_level").get<std::size_t>(),
                          row.at("window_size").get<std::uint64_t>(),
                          rational_from_json(row.at("average")), rational_from_json(row.at("haar")),
                          rational_from_json(row.at("deviation"))});
  }
  return r;
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

std::string emit_report(const AFChainReport& r, Format format) {
  if (format == Format::json) return dump_canonical(to_json(r));
  std::ostringstream out;
  out << "AF chain report: " << r.group.to_string() << ", chain [" << join(r.moduli) << "], selection "
      << r.selection << "\n\n";
  Table levels({"level", "modulus", "index", "tile", "generator", "left defect", "right defect"});
  for (const auto& lv : r.levels) {
    for (std::size_t i = 0; i < std::max<std::size_t>(lv.defects.size(), 1); ++i) {
      std::vector<std::string> row;
      if (i == 0) {
        row = {std::to_string(lv.level), std::to_string(lv.modulus), std::to_string(lv.index),
               std::to_string(lv.tile_size)};
      } else {
        row = {"", "", "", ""};
      }
      if (i < lv.defects.size()) {
        row.push_back(lv.defects[i].generator.to_string());
        row.push_back(to_string(lv.defects[i].left));
        row.push_back(to_string(lv.defects[i].right));
      }
      levels.add(std::move(row));
    }
  }
  out << levels.render() << "\nmultiplicities: [" << join(r.multiplicities) << "]\n";
  if (r.supernatural) {
    out << "supernatural: ";
    for (std::size_t i = 0; i < r.supernatural->size(); ++i) {
      const auto& f = (*r.supernatural)[i];
      if (i) out << " · ";
      out << f.prime << "^" << (f.exponent ? std::to_string(*f.exponent) : std::string("inf"));
    }
    out << '\n';
  }
  return out.str();
}

std::string emit_report(const GraphCertificate& c, Format format) {
  if (format == Format::json) return dump_canonical(to_json(c));
  std::ostringstream out;
  out << "almost-AF certificate: " << c.group.to_string() << ", chain [" << join(c.moduli)
      << "], level " << c.level << ", m = " << c.bounds.m << "\n";
  out << "movers S: " << c.movers.to_string() << "\n";
  out << "K: " << c.k.to_string() << "\n\n";
  Table sigma({"i", "g", "sigma_i(g)", "mover sigma_i(g) g^-1"});
  for (std::size_t i = 0; i < c.sigma.size(); ++i) {
    for (const auto& [g, t] : c.sigma[i]) {
      sigma.add({std::to_string(i + 1), g.to_string(), t.to_string(),
                 (t * g.inverse()).to_string()});
    }
  }
  out << sigma.render() << '\n';
  Table graphs({"graph", "level", "base labels", "mover"});
  for (std::size_t i = 0; i < c.graphs.size(); ++i) {
    for (const auto& p : c.graphs[i].patches()) {
      graphs.add({std::to_string(i + 1), std::to_string(c.graphs[i].level()), join(p.base.labels(), " "),
                  p.mover.to_string()});
    }
  }
  out << graphs.render() << '\n';
  const auto& b = c.bounds;
  out << "bounds: |K| = " << b.k_size << " <= " << b.sum_differences << " <= " << b.mover_count
      << "·" << b.max_symmetric_difference << "; m·|S|·max = "
      << b.m * b.mover_count * b.max_symmetric_difference << " < |K_n| = " << b.tile_size << "\n";
  const auto& v = c.validation;
  Table checks({"check", "holds"});
  checks.add({"s(C_i) = s(C)", yes_no(v.sources_equal)});
  checks.add({"ranges pairwise disjoint", yes_no(v.ranges_disjoint)});
  checks.add({"each C_i is a graph", yes_no(v.graphs)});
  checks.add({"each C_i inside G_n", yes_no(v.inside_Gn)});
  checks.add({"inequality chain", yes_no(v.inequality_chain)});
  out << '\n' << checks.render();
  return out.str();
}

std::string emit_report(const MeasureReport& r, Format format) {
  if (format == Format::json) return dump_canonical(to_json(r));
  std::ostringstream out;
  out << "invariant measure: " << r.group.to_string() << ", chain [" << join(r.moduli) << "], level "
      << r.level << "\n";
  out << "generators:";
  for (const auto& g : r.generators) out << ' ' << g.to_string();
  out << "\nunique: " << (r.unique ? "yes" : "no (generators insufficient)") << "\n";
  out << "equality classes: " << r.classes.size() << "\n\n";
  Table masses({"label", "mass"});
  for (std::size_t c = 0; c < r.masses.size(); ++c) masses.add({std::to_string(c), to_string(r.masses[c])});
  out << masses.render() << '\n';
  Table trace({"label", "reached from", "via generator"});
  for (const auto& s : r.trace) {
    trace.add({std::to_string(s.label), s.from ? std::to_string(*s.from) : "root",
               s.from ? std::to_string(s.generator) : "-"});
  }
  out << trace.render() << '\n';
  out << "Birkhoff averages of the indicator of cylinder (" << r.level << ", " << r.target_label
      << ")\n";
  Table birkhoff({"window level", "|F|", "average", "haar", "deviation"});
  for (const auto& row : r.birkhoff) {
    birkhoff.add({std::to_string(row.window_level), std::to_string(row.window_size),
                  to_string(row.average), to_string(row.haar), to_string(row.deviation)});
  }
  out << birkhoff.render();
  return out.str();
}

}  // namespace gbd
