#include "gbd/config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <sstream>

namespace gbd {

namespace {

template <typename T>
T scalar(const YAML::Node& node, const std::string& key) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ValidationError("config key '" + key + "' has an invalid value");
  }
}

Rational rational_value(const YAML::Node& node, const std::string& key) {
  if (!node.IsScalar()) throw ValidationError("config key '" + key + "' must be a rational");
  return parse_rational(node.Scalar());
}

GroupDescriptor parse_group(const YAML::Node& node) {
  if (node.IsScalar()) {
    const auto kind = parse_group_kind(node.Scalar());
    return {kind, kind == GroupKind::heisenberg ? 3u : 1u};
  }
  if (!node.IsMap() || !node["kind"]) {
    throw ValidationError("config key 'group' must be a name or {kind, rank}");
  }
  const auto kind = parse_group_kind(scalar<std::string>(node["kind"], "group.kind"));
  std::size_t rank = kind == GroupKind::heisenberg ? 3 : 1;
  if (node["rank"]) rank = scalar<std::size_t>(node["rank"], "group.rank");
  return {kind, rank};
}

}  // namespace

RunConfig default_config() { return {}; }

RunConfig parse_config(std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw ValidationError(std::string("config is not valid YAML: ") + e.what());
  }
  RunConfig cfg;
  if (root.IsNull()) return cfg;
  if (!root.IsMap()) throw ValidationError("config must be a mapping");

  static const std::vector<std::string> known{"group",      "chain",        "depth",
                                              "epsilons",   "generators",   "size_cap",
                                              "size-cap",   "probe_radius", "acceptance",
                                              "improvement_passes"};
  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ValidationError("unknown config key '" + key + "'");
    }
  }

  if (root["group"]) cfg.group = parse_group(root["group"]);
  if (root["chain"]) {
    if (!root["chain"].IsSequence() || root["chain"].size() == 0) {
      throw ValidationError("config key 'chain' must be a nonempty list of moduli");
    }
    cfg.chain.clear();
    for (const auto& m : root["chain"]) cfg.chain.push_back(scalar<std::uint64_t>(m, "chain"));
  }
  cfg.depth = cfg.chain.size();
  if (root["depth"]) {
    cfg.depth = scalar<std::size_t>(root["depth"], "depth");
    if (cfg.depth == 0 || cfg.depth > cfg.chain.size()) {
      throw ValidationError("config key 'depth' must lie in [1, " + std::to_string(cfg.chain.size()) +
                            "]");
    }
    cfg.chain.resize(cfg.depth);
  }
  if (root["epsilons"]) {
    if (!root["epsilons"].IsSequence()) throw ValidationError("config key 'epsilons' must be a list");
    cfg.epsilons.clear();
    for (const auto& e : root["epsilons"]) cfg.epsilons.push_back(rational_value(e, "epsilons"));
    for (std::size_t i = 0; i < cfg.epsilons.size(); ++i) {
      if (cfg.epsilons[i] <= 0) throw ValidationError("config key 'epsilons' holds a nonpositive value");
      if (i && cfg.epsilons[i] > cfg.epsilons[i - 1]) {
        throw ValidationError("config key 'epsilons' must be non-increasing");
      }
    }
  }
  if (root["generators"]) {
    if (!root["generators"].IsSequence()) throw ValidationError("config key 'generators' must be a list");
    for (const auto& g : root["generators"]) {
      if (!g.IsSequence()) throw ValidationError("each generator must be a coordinate list");
      std::vector<Integer> coords;
      for (const auto& c : g) {
        if (!c.IsScalar()) throw ValidationError("generator coordinates must be integers");
        coords.push_back(parse_integer(c.Scalar()));
      }
      if (coords.size() != cfg.group.rank()) {
        throw ValidationError("generator has " + std::to_string(coords.size()) +
                              " coordinates; the group has rank " + std::to_string(cfg.group.rank()));
      }
      cfg.generators.push_back(cfg.group.element(std::move(coords)));
    }
  }
  for (const char* key : {"size_cap", "size-cap"}) {
    if (root[key]) {
      cfg.size_cap = scalar<std::size_t>(root[key], key);
      if (cfg.size_cap == 0) throw ValidationError("config key 'size_cap' must be positive");
    }
  }
  if (root["probe_radius"]) cfg.probe_radius = scalar<std::size_t>(root["probe_radius"], "probe_radius");
  if (root["acceptance"]) {
    const auto rule = scalar<std::string>(root["acceptance"], "acceptance");
    if (rule == "measured") {
      cfg.acceptance = AcceptanceRule::measured;
    } else if (rule == "third-prescreen" || rule == "third_prescreen") {
      cfg.acceptance = AcceptanceRule::third_prescreen;
    } else {
      throw ValidationError("config key 'acceptance' must be measured or third-prescreen");
    }
  }
  if (root["improvement_passes"]) {
    cfg.improvement_passes = scalar<std::size_t>(root["improvement_passes"], "improvement_passes");
  }

  const auto chain = cfg.make_chain();
  const auto diagnostics = check_chain(chain, cfg.probe_radius);
  if (!diagnostics.nestedness.passed) {
    throw ValidationError("config chain is not nested: " + diagnostics.nestedness.witness);
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace gbd
