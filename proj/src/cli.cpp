#include "gbd/cli.hpp"

#include "gbd/config.hpp"
#include "gbd/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

namespace gbd {

using nlohmann::json;

CompactGroupoidSet parse_compact_set(std::string_view text, const SubgroupChain& chain) {
  std::vector<ArrowPatch> patches;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    const std::string where = "compact set line " + std::to_string(line_no);
    if (tokens.size() != 2 + chain.group().rank()) {
      throw ValidationError(where + ": expected level, label and " +
                            std::to_string(chain.group().rank()) + " mover coordinates");
    }
    std::size_t level = 0;
    Label label = 0;
    try {
      level = std::stoull(tokens[0]);
      label = std::stoull(tokens[1]);
    } catch (const std::exception&) {
      throw ValidationError(where + ": level and label must be nonnegative integers");
    }
    chain.check_level(level);
    if (label >= chain.index(level)) {
      throw ValidationError(where + ": label " + tokens[1] + " exceeds the level-" + tokens[0] +
                            " index " + std::to_string(chain.index(level)));
    }
    std::vector<Integer> coords;
    for (std::size_t i = 2; i < tokens.size(); ++i) coords.push_back(parse_integer(tokens[i]));
    patches.push_back({ClopenSet(level, {label}), chain.group().element(std::move(coords))});
  }
  if (patches.empty()) throw ValidationError("compact set lists no patches");
  return {std::move(patches), chain};
}

namespace {

struct Context {
  RunConfig config;
  Format format = Format::json;
  std::uint64_t seed = 0;
  std::ostream& out;
  std::ostream& err;

  SubgroupChain chain() const { return config.make_chain(); }

  std::vector<GroupElement> generators() const {
    return config.generators.empty() ? config.group.generators() : config.generators;
  }

  TileProvider provider(const SubgroupChain& chain) const {
    auto base = canonical_tiles(chain, TransversalOptions{config.improvement_passes});
    return [base, chain, cap = config.size_cap](std::size_t level) {
      if (chain.index(level) > cap) {
        throw SizeCapExceeded("level " + std::to_string(level) + " index " +
                              std::to_string(chain.index(level)) + " exceeds the size cap " +
                              std::to_string(cap));
      }
      return base(level);
    };
  }

  void emit(const json& j) const { out << dump_canonical(j); }
};

std::string rat(const Rational& r) { return to_string(r); }

// Failed checks still print their document before returning exit_validation.
int cmd_tile(const Context& ctx, std::optional<std::size_t> only_level) {
  const auto chain = ctx.chain();
  const auto provider = ctx.provider(chain);
  const auto gens = ctx.generators();
  json tiles = json::array();
  std::ostringstream text;
  text << "level  modulus  index  |K|  generator  left  right\n";
  for (std::size_t n = 1; n <= chain.depth(); ++n) {
    if (only_level && n != *only_level) continue;
    const Tile tile = provider(n);
    json defects = json::array();
    for (const auto& g : gens) {
      const auto left = folner_defect(tile.elements(), g, Side::left);
      const auto right = folner_defect(tile.elements(), g, Side::right);
      defects.push_back({{"generator", to_json(g)}, {"left", rat(left)}, {"right", rat(right)}});
      text << n << "  " << chain.modulus(n) << "  " << chain.index(n) << "  " << tile.size() << "  "
           << g.to_string() << "  " << rat(left) << "  " << rat(right) << '\n';
    }
    json elements = json::array();
    for (const auto& k : tile.elements()) elements.push_back(to_json(k));
    tiles.push_back({{"level", n},
                     {"modulus", chain.modulus(n)},
                     {"index", chain.index(n)},
                     {"size", tile.size()},
                     {"defects", std::move(defects)},
                     {"elements", std::move(elements)}});
  }
  if (only_level) chain.check_level(*only_level);
  if (ctx.format == Format::json) {
    ctx.emit({{"group", {{"kind", to_string(chain.group().kind())}, {"rank", chain.group().rank()}}},
              {"chain", chain.moduli()},
              {"tiles", std::move(tiles)}});
  } else {
    ctx.out << text.str();
  }
  return exit_ok;
}

int cmd_refine(const Context& ctx, std::size_t small_level, std::size_t big_level, bool perturb) {
  const auto chain = ctx.chain();
  chain.check_level(small_level);
  chain.check_level(big_level);
  const auto provider = ctx.provider(chain);
  const Tile small = provider(small_level);
  const Tile big = provider(big_level);
  Tile refined = refine_tile(small, big, chain);
  std::optional<std::pair<GroupElement, GroupElement>> swapped;
  if (perturb) {
    const auto kernel = chain.kernel_generators(big_level);
    std::mt19937_64 rng(ctx.seed);
    const auto& elems = refined.elements().elements();
    const auto& k = elems[std::uniform_int_distribution<std::size_t>(0, elems.size() - 1)(rng)];
    const auto& h = kernel[std::uniform_int_distribution<std::size_t>(0, kernel.size() - 1)(rng)];
    std::vector<GroupElement> moved;
    for (const auto& e : elems) moved.push_back(e == k ? k * h : e);
    swapped.emplace(k, k * h);
    refined = require_tile(FiniteElementSet(std::move(moved), ctx.config.size_cap), big_level, chain);
  }
  const auto check = check_refinement(small, big, refined, chain);
  const auto centers = tiling_centers(big, small_level, chain);

  json blocks = json::array();
  for (const auto& c : centers) {
    json block = json::array();
    for (const auto& k : small.elements()) block.push_back(to_json(k * c));
    blocks.push_back({{"center", to_json(c)}, {"block", std::move(block)}});
  }
  json doc = {{"small_level", small_level},
              {"big_level", big_level},
              {"small_size", small.size()},
              {"big_size", big.size()},
              {"refined_size", refined.size()},
              {"decomposition", std::move(blocks)},
              {"checks",
               {{"is_tile", check.is_tile},
                {"cardinality", check.cardinality},
                {"partition", check.partition},
                {"boundary_inclusion", check.boundary_inclusion}}},
              {"perturbation", nullptr}};
  if (swapped) {
    doc["perturbation"] = {{"seed", ctx.seed},
                           {"replaced", to_json(swapped->first)},
                           {"by", to_json(swapped->second)}};
  }
  if (ctx.format == Format::json) {
    ctx.emit(doc);
  } else {
    ctx.out << "refine level " << small_level << " (|K|=" << small.size() << ") into level "
            << big_level << " (|K|=" << big.size() << ")\n";
    ctx.out << "centers big ∩ L_" << small_level << ": " << centers.to_string() << '\n';
    if (swapped) {
      ctx.out << "perturbed (seed " << ctx.seed << "): " << swapped->first.to_string() << " -> "
              << swapped->second.to_string() << '\n';
    }
    ctx.out << "is tile: " << check.is_tile << "\ncardinality: " << check.cardinality
            << "\npartition: " << check.partition
            << "\nsymmetric difference inside boundary: " << check.boundary_inclusion << '\n';
  }
  if (!check.all()) {
    ctx.err << "refinement check failed";
    if (swapped) ctx.err << " at " << swapped->second.to_string();
    ctx.err << '\n';
    return exit_validation;
  }
  return exit_ok;
}

int cmd_odometer(const Context& ctx, std::size_t steps, std::size_t depth, std::size_t generator) {
  const auto chain = ctx.chain();
  chain.check_level(depth);
  const auto gens = ctx.generators();
  if (generator >= gens.size()) {
    throw ValidationError("generator index " + std::to_string(generator) + " out of range (" +
                          std::to_string(gens.size()) + " generators)");
  }
  const auto orbit = odometer_orbit(gens[generator], steps, depth, chain);
  if (ctx.format == Format::json) {
    json rows = json::array();
    for (const auto& p : orbit) rows.push_back(p.labels());
    ctx.emit({{"generator", to_json(gens[generator])},
              {"depth", depth},
              {"steps", steps},
              {"chain", chain.moduli()},
              {"orbit", std::move(rows)}});
  } else {
    ctx.out << "orbit of the identity point under " << gens[generator].to_string() << "\n";
    ctx.out << "t";
    for (std::size_t n = 1; n <= depth; ++n) ctx.out << "\tlevel " << n;
    ctx.out << '\n';
    for (std::size_t t = 0; t < orbit.size(); ++t) {
      ctx.out << t;
      for (Label l : orbit[t].labels()) ctx.out << '\t' << l;
      ctx.out << '\n';
    }
  }
  return exit_ok;
}

int cmd_cert(const Context& ctx, std::uint64_t m, const std::string& path) {
  const auto chain = ctx.chain();
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read compact-set file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const auto c = parse_compact_set(buffer.str(), chain);
  const auto nested = nest_all_levels(chain, ctx.provider(chain));
  try {
    const auto cert = almost_af_certificate(c, m, nested, chain);
    ctx.out << emit_report(cert, ctx.format);
  } catch (const PreconditionViolated& e) {
    ctx.err << e.what() << "\nwitness: base level " << e.witness().base.level() << " labels";
    for (Label l : e.witness().base.labels()) ctx.err << ' ' << l;
    ctx.err << " mover " << e.witness().mover.to_string() << '\n';
    return exit_validation;
  }
  return exit_ok;
}

int cmd_measure(const Context& ctx, std::size_t level, Label target) {
  const auto chain = ctx.chain();
  chain.check_level(level);
  if (target >= chain.index(level)) {
    throw ValidationError("target label " + std::to_string(target) + " exceeds the level index");
  }
  const auto gens = ctx.generators();
  const auto nested = nest_all_levels(chain, ctx.provider(chain));
  ctx.out << emit_report(measure_report(level, gens, target, nested, chain), ctx.format);
  return exit_ok;
}

int cmd_report(const Context& ctx, bool select) {
  const auto chain = ctx.chain();
  const auto provider = ctx.provider(chain);
  const auto gens = ctx.generators();
  const auto nested =
      select ? select_nested_chain(chain, FiniteElementSet(gens, ctx.config.size_cap),
                                   ctx.config.epsilons, provider, ctx.config.acceptance)
             : nest_all_levels(chain, provider);
  ctx.out << emit_report(af_chain_report(nested, chain), ctx.format);
  return exit_ok;
}

int exit_code(const Error& e) {
  switch (e.category()) {
    case ErrorCategory::validation: return exit_validation;
    case ErrorCategory::exhausted: return exit_exhausted;
    case ErrorCategory::size_cap: return exit_size_cap;
  }
  return exit_validation;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tilings, odometers and almost-AF certificates for residually finite groups", "gbd"};
  app.require_subcommand(1);

  std::string config_path;
  std::string format_name = "json";
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "YAML run configuration");
  app.add_option("--format", format_name, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", seed, "Seed for randomized instance generation");

  auto* tile = app.add_subcommand("tile", "Build and verify a tile per level, with defect tables");
  std::optional<std::size_t> tile_level;
  tile->add_option("--level", tile_level, "Only this level");

  auto* refine = app.add_subcommand("refine", "Refine a small tile into a large one");
  std::size_t small_level = 1;
  std::size_t big_level = 0;
  bool perturb = false;
  refine->add_option("--small", small_level, "Level of the small tile");
  refine->add_option("--big", big_level, "Level of the large tile (default: deepest)");
  refine->add_flag("--perturb", perturb, "Move one element of the refinement (uses --seed)");

  auto* odometer = app.add_subcommand("odometer", "Orbit of the identity point");
  std::size_t steps = 0;
  std::size_t depth = 0;
  std::size_t generator = 0;
  odometer->add_option("--steps", steps, "Number of steps")->required();
  odometer->add_option("--depth", depth, "Truncation depth")->required();
  odometer->add_option("--generator", generator, "Index into the generator list");

  auto* cert = app.add_subcommand("cert", "Almost-AF certificate for a compact groupoid set");
  std::uint64_t m = 0;
  std::string compact_path;
  cert->add_option("--m", m, "Number of graphs")->required();
  cert->add_option("--compact-set", compact_path, "Patch listing")->required();

  auto* measure = app.add_subcommand("measure", "Solve the invariant measure at a level");
  std::size_t measure_level = 0;
  Label target = 0;
  measure->add_option("--level", measure_level, "Level")->required();
  measure->add_option("--target", target, "Cylinder label for the Birkhoff table");

  auto* report = app.add_subcommand("report", "AF-chain report");
  bool select = false;
  report->add_flag("--select", select, "Select levels against the configured epsilons");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_validation;
  }

  try {
    Context ctx{config_path.empty() ? default_config() : load_config(config_path),
                parse_format(format_name), seed, out, err};
    if (*tile) return cmd_tile(ctx, tile_level);
    if (*refine) return cmd_refine(ctx, small_level, big_level ? big_level : ctx.config.chain.size(), perturb);
    if (*odometer) return cmd_odometer(ctx, steps, depth, generator);
    if (*cert) return cmd_cert(ctx, m, compact_path);
    if (*measure) return cmd_measure(ctx, measure_level, target);
    if (*report) return cmd_report(ctx, select);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e);
  }
  return exit_ok;
}

}  // namespace gbd
