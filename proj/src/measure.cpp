#include "gbd/measure.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

namespace gbd {

LevelMeasure::LevelMeasure(std::size_t level, std::vector<Rational> masses,
                           const SubgroupChain& chain)
    : level_(level), masses_(std::move(masses)) {
  if (masses_.size() != chain.index(level)) {
    throw ValidationError("measure lists " + std::to_string(masses_.size()) + " masses for " +
                          std::to_string(chain.index(level)) + " labels");
  }
  Rational total = 0;
  for (const auto& m : masses_) {
    if (m < 0) throw ValidationError("negative mass " + to_string(m));
    total += m;
  }
  if (total != 1) throw ValidationError("total mass is " + to_string(total) + ", not 1");
}

LevelMeasure LevelMeasure::haar(std::size_t level, const SubgroupChain& chain) {
  const std::uint64_t index = chain.index(level);
  return {level, std::vector<Rational>(index, Rational(Integer(1), Integer(index))), chain};
}

Rational LevelMeasure::mass(const ClopenSet& set, const SubgroupChain& chain) const {
  auto at_level = coarsen_to(set, level_, chain);
  if (!at_level) {
    throw ValidationError("clopen set at level " + std::to_string(set.level()) +
                          " is not measurable by a level-" + std::to_string(level_) + " measure");
  }
  Rational total = 0;
  for (Label c : at_level->labels()) total += masses_[c];
  return total;
}

Rational invariance_defect(std::span<const WeightedPatch> f, const LevelMeasure& mu,
                           const SubgroupChain& chain) {
  Rational source_side = 0;
  Rational range_side = 0;
  for (const auto& [patch, weight] : f) {
    chain.group().require(patch.mover);
    source_side += weight * mu.mass(patch.base, chain);
    range_side += weight * mu.mass(act(patch.mover, patch.base, chain), chain);
  }
  return abs(source_side - range_side);
}

InvariantMeasureSolution solve_invariant_measure(std::size_t level,
                                                 std::span<const GroupElement> generators,
                                                 const SubgroupChain& chain) {
  const std::uint64_t index = chain.index(level);
  for (const auto& g : generators) chain.group().require(g);

  // Union-find over labels; each generator g forces mu(c) = mu(g·c).
  std::vector<Label> parent(index);
  std::iota(parent.begin(), parent.end(), Label{0});
  auto find = [&](Label x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::vector<std::vector<Label>> successors(index);
  for (Label c = 0; c < index; ++c) {
    for (const auto& g : generators) {
      const Label d = chain.act(g, c, level);
      successors[c].push_back(d);
      const Label rc = find(c);
      const Label rd = find(d);
      if (rc != rd) parent[std::max(rc, rd)] = std::min(rc, rd);
    }
  }

  std::map<Label, std::vector<Label>> by_root;
  for (Label c = 0; c < index; ++c) by_root[find(c)].push_back(c);
  InvariantMeasureSolution out{LevelMeasure::haar(level, chain), by_root.size() == 1, {}, {}};
  for (auto& [root, members] : by_root) out.classes.push_back(std::move(members));

  // Breadth-first orbit of label 0 along generator edges, in either direction.
  std::vector<std::vector<std::pair<Label, std::size_t>>> adjacent(index);
  for (Label c = 0; c < index; ++c) {
    for (std::size_t j = 0; j < successors[c].size(); ++j) {
      adjacent[c].emplace_back(successors[c][j], j);
      adjacent[successors[c][j]].emplace_back(c, j);
    }
  }
  std::vector<bool> seen(index, false);
  std::deque<Label> queue{0};
  seen[0] = true;
  out.trace.push_back({0, std::nullopt, 0});
  while (!queue.empty()) {
    const Label c = queue.front();
    queue.pop_front();
    for (const auto& [d, j] : adjacent[c]) {
      if (seen[d]) continue;
      seen[d] = true;
      out.trace.push_back({d, c, j});
      queue.push_back(d);
    }
  }
  return out;
}

Rational birkhoff_average(std::span<const Rational> f, std::size_t level,
                          const FiniteElementSet& window, const CoherentPoint& x0,
                          const SubgroupChain& chain) {
  if (window.empty()) throw ValidationError("birkhoff_average needs a nonempty window");
  if (f.size() != chain.index(level)) {
    throw ValidationError("function size does not match the level-" + std::to_string(level) +
                          " index");
  }
  const Label start = x0.label(level);
  Rational total = 0;
  for (const auto& g : window) total += f[chain.act(g, start, level)];
  return total / Integer(window.size());
}

std::vector<Rational> indicator(const ClopenSet& set, const SubgroupChain& chain) {
  std::vector<Rational> out(chain.index(set.level()), Rational(0));
  for (Label c : set.labels()) out[c] = 1;
  return out;
}

}  // namespace gbd
