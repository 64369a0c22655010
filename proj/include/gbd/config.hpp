#pragma once

#include "gbd/folner.hpp"
#include "gbd/groups.hpp"
#include "gbd/tiling.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace gbd {

/// Run configuration, read from a YAML document such as
///
///   group: {kind: heisenberg, rank: 3}
///   chain: [2, 4, 8]
///   depth: 3
///   epsilons: ["1/2", "1/4"]
///   generators: [[1, 0, 0], [0, 1, 0]]
///   size_cap: 16777216
///
/// Optional keys: depth (chain length), epsilons (["1/2"]), generators (the
/// group's symmetric generators), size_cap, probe_radius (3), acceptance
/// ("measured" or "third-prescreen"), improvement_passes (4).
struct RunConfig {
  GroupDescriptor group = GroupDescriptor::lattice(1);
  std::vector<std::uint64_t> chain{2, 4, 8, 16};
  std::size_t depth = 4;
  std::vector<Rational> epsilons{Rational(Integer(1), Integer(2))};
  std::vector<GroupElement> generators;
  std::size_t size_cap = default_size_cap;
  std::size_t probe_radius = 3;
  AcceptanceRule acceptance = AcceptanceRule::measured;
  std::size_t improvement_passes = 4;

  SubgroupChain make_chain() const { return {group, chain}; }
};

RunConfig default_config();

/// Parses and validates; throws ValidationError naming the offending key.
RunConfig parse_config(std::string_view yaml_text);
RunConfig load_config(const std::string& path);

}  // namespace gbd
