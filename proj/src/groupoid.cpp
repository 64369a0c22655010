#include "gbd/groupoid.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace gbd {

std::string Arrow::to_string() const {
  return "(" + point.to_string() + ", " + mover.to_string() + ")";
}

Arrow compose(const Arrow& first, const Arrow& second, const SubgroupChain& chain) {
  const auto middle = act(first.mover, first.point, chain);
  if (middle != second.point) {
    throw NonComposable("cannot compose " + first.to_string() + " with " + second.to_string() +
                        ": range " + middle.to_string() + " is not the second source");
  }
  return {first.point, second.mover * first.mover};
}

Arrow invert(const Arrow& arrow, const SubgroupChain& chain) {
  return {act(arrow.mover, arrow.point, chain), arrow.mover.inverse()};
}

CoherentPoint range(const Arrow& arrow, const SubgroupChain& chain) {
  return act(arrow.mover, arrow.point, chain);
}

CompactGroupoidSet::CompactGroupoidSet(std::vector<ArrowPatch> patches,
                                       const SubgroupChain& chain) {
  for (const auto& p : patches) {
    chain.check_level(p.base.level());
    chain.group().require(p.mover);
    level_ = std::max(level_, p.base.level());
  }
  std::map<GroupElement, std::vector<Label>> merged;
  for (const auto& p : patches) {
    auto refined = refine_to(p.base, level_, chain);
    auto& labels = merged[p.mover];
    labels.insert(labels.end(), refined.labels().begin(), refined.labels().end());
  }
  for (auto& [mover, labels] : merged) {
    if (labels.empty()) continue;
    patches_.push_back({ClopenSet(level_, std::move(labels)), mover});
  }
}

FiniteElementSet CompactGroupoidSet::mover_set() const {
  std::vector<GroupElement> out;
  for (const auto& p : patches_) out.push_back(p.mover);
  return FiniteElementSet(std::move(out));
}

ClopenSet CompactGroupoidSet::source() const {
  std::vector<Label> out;
  for (const auto& p : patches_) out.insert(out.end(), p.base.labels().begin(), p.base.labels().end());
  return {level_, std::move(out)};
}

ClopenSet CompactGroupoidSet::range(const SubgroupChain& chain) const {
  std::vector<Label> out;
  for (const auto& p : patches_) {
    auto r = act(p.mover, p.base, chain);
    out.insert(out.end(), r.labels().begin(), r.labels().end());
  }
  return {level_, std::move(out)};
}

std::vector<std::pair<Cylinder, GroupElement>> CompactGroupoidSet::arrows() const {
  std::vector<std::pair<Cylinder, GroupElement>> out;
  for (const auto& p : patches_) {
    for (Label c : p.base.labels()) out.emplace_back(Cylinder{level_, c}, p.mover);
  }
  return out;
}

namespace {

void require_tile_level(const Tile& tile, std::size_t level) {
  if (tile.level() != level) {
    throw ValidationError("tile is a level-" + std::to_string(tile.level()) +
                          " transversal, not level " + std::to_string(level));
  }
}

bool member_by_label(Label label, const GroupElement& mover, const Tile& tile) {
  return tile.contains(mover * tile.element_with_label(label));
}

}  // namespace

bool membership_Gn(const Arrow& arrow, std::size_t level, const Tile& tile,
                   const SubgroupChain& chain) {
  require_tile_level(tile, level);
  chain.group().require(arrow.mover);
  return member_by_label(arrow.point.label(level), arrow.mover, tile);
}

bool PatchMembership::all() const {
  return std::all_of(cylinders.begin(), cylinders.end(), [](const auto& c) { return c.second; });
}

bool PatchMembership::any() const {
  return std::any_of(cylinders.begin(), cylinders.end(), [](const auto& c) { return c.second; });
}

PatchMembership membership_Gn(const ArrowPatch& patch, std::size_t level, const Tile& tile,
                              const SubgroupChain& chain) {
  require_tile_level(tile, level);
  chain.group().require(patch.mover);
  std::vector<Label> labels;
  if (patch.base.level() >= level) {
    for (Label c : patch.base.labels()) labels.push_back(chain.project(c, patch.base.level(), level));
  } else {
    labels = refine_to(patch.base, level, chain).labels();
  }
  ClopenSet split(level, std::move(labels));
  PatchMembership out;
  for (Label c : split.labels()) {
    out.cylinders.emplace_back(Cylinder{level, c}, member_by_label(c, patch.mover, tile));
  }
  return out;
}

NestingCheck verify_nesting(const Tile& small, const Tile& big, const SubgroupChain& chain) {
  if (small.level() > big.level()) {
    throw ValidationError("verify_nesting: level order violated");
  }
  NestingCheck out;
  const auto identity_fiber = chain.fiber(0, small.level(), big.level());
  for (const auto& g : small.elements()) {
    const auto g_inv = g.inverse();
    for (const auto& g1 : small.elements()) {
      const auto mover = g1 * g_inv;
      for (Label c : identity_fiber) {
        ++out.arrows_checked;
        const Label source = chain.act(g, c, big.level());
        if (!member_by_label(source, mover, big) && out.passed) {
          out.passed = false;
          out.witness = Arrow{point_from_label(source, big.level(), chain), mover};
        }
      }
    }
  }
  return out;
}

NestingCheck verify_nesting(const NestedTileChain& nested, std::size_t k,
                            const SubgroupChain& chain) {
  if (k + 1 >= nested.levels.size()) {
    if (k < nested.levels.size()) {
      return verify_nesting(nested.levels[k].tile, nested.levels[k].tile, chain);
    }
    throw ValidationError("nested chain has no pair at position " + std::to_string(k));
  }
  return verify_nesting(nested.levels[k].tile, nested.levels[k + 1].tile, chain);
}

bool validate_graph(const CompactGroupoidSet& set, const SubgroupChain& chain) {
  std::set<Label> sources;
  std::set<Label> ranges;
  for (const auto& [cyl, mover] : set.arrows()) {
    if (!sources.insert(cyl.label).second) return false;
    if (!ranges.insert(chain.act(mover, cyl.label, cyl.level)).second) return false;
  }
  return true;
}

bool CertificateBounds::holds() const {
  return k_size <= sum_differences && sum_differences <= mover_count * max_symmetric_difference &&
         m * mover_count * max_symmetric_difference < tile_size && m * k_size < tile_size;
}

PreconditionViolated::PreconditionViolated(ArrowPatch witness)
    : ValidationError("compact set meets the subgroupoid: arrow over cylinder (level " +
                      std::to_string(witness.base.level()) + ", label " +
                      std::to_string(witness.base.labels().front()) + ") with mover " +
                      witness.mover.to_string()),
      witness_(std::move(witness)) {}

std::optional<std::size_t> certificate_level(const FiniteElementSet& movers, std::uint64_t m,
                                             const NestedTileChain& nested) {
  for (std::size_t i = 0; i < nested.levels.size(); ++i) {
    const auto& tile = nested.levels[i].tile.elements();
    std::uint64_t worst = 0;
    for (const auto& s : movers) {
      worst = std::max<std::uint64_t>(worst, translate_difference_size(tile, s, Side::left));
    }
    if (movers.size() * m * worst < tile.size()) return i;
  }
  return std::nullopt;
}

GraphCertificate almost_af_certificate(const CompactGroupoidSet& c, std::uint64_t m,
                                       const NestedTileChain& nested, const SubgroupChain& chain) {
  if (m == 0) throw ValidationError("almost_af_certificate needs m >= 1");
  if (c.empty()) throw ValidationError("almost_af_certificate needs a nonempty compact set");

  GraphCertificate cert;
  cert.group = chain.group().signature();
  cert.moduli = chain.moduli();
  cert.input = c;
  cert.movers = c.mover_set();
  for (const auto& p : c.patches()) {
    if (p.mover.is_identity()) {
      throw PreconditionViolated({ClopenSet(Cylinder{p.base.level(), p.base.labels().front()}),
                                  p.mover});
    }
  }

  const auto selected = certificate_level(cert.movers, m, nested);
  if (!selected) {
    throw LevelExhausted("no nested level satisfies |S|·m·max|K_n △ sK_n| < |K_n| for |S| = " +
                         std::to_string(cert.movers.size()) + ", m = " + std::to_string(m));
  }
  const Tile& tile = nested.levels[*selected].tile;
  const std::size_t n = tile.level();
  cert.level = n;
  cert.tile = tile.elements();

  for (const auto& p : c.patches()) {
    for (const auto& [cyl, inside] : membership_Gn(p, n, tile, chain).cylinders) {
      if (inside) throw PreconditionViolated({ClopenSet(cyl), p.mover});
    }
  }

  // K = union over s of K_n \ s^-1 K_n: tile elements that some mover pushes out of the tile.
  std::vector<GroupElement> k_elems;
  auto& b = cert.bounds;
  b.m = m;
  b.mover_count = cert.movers.size();
  b.tile_size = tile.size();
  for (const auto& s : cert.movers) {
    b.max_symmetric_difference = std::max<std::uint64_t>(
        b.max_symmetric_difference, translate_difference_size(tile.elements(), s, Side::left));
  }
  for (const auto& g : tile.elements()) {
    bool pushed_out = false;
    for (const auto& s : cert.movers) {
      if (!tile.contains(s * g)) {
        ++b.sum_differences;
        pushed_out = true;
      }
    }
    if (pushed_out) k_elems.push_back(g);
  }
  cert.k = FiniteElementSet(std::move(k_elems));
  b.k_size = cert.k.size();

  // Injections with disjoint ranges: hand out the smallest unused tile elements in order.
  auto next_target = tile.elements().begin();
  cert.sigma.resize(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    for (const auto& g : cert.k) {
      if (next_target == tile.elements().end()) {
        throw std::logic_error("almost_af_certificate: ran out of injection targets");
      }
      cert.sigma[i].emplace_back(g, *next_target++);
    }
  }

  const std::size_t work_level = std::max(c.level(), n);
  const auto src = refine_to(c.source(), work_level, chain);
  for (std::uint64_t i = 0; i < m; ++i) {
    std::vector<ArrowPatch> patches;
    for (const auto& [g, target] : cert.sigma[i]) {
      const ClopenSet fiber(n, {chain.label(g, n)});
      auto base = clopen_intersection(src, refine_to(fiber, work_level, chain), chain);
      if (!base.empty()) patches.push_back({std::move(base), target * g.inverse()});
    }
    cert.graphs.emplace_back(std::move(patches), chain);
  }

  auto& v = cert.validation;
  v.sources_equal = std::all_of(cert.graphs.begin(), cert.graphs.end(), [&](const auto& gi) {
    return clopen_equal(gi.source(), c.source(), chain);
  });
  v.ranges_disjoint = true;
  for (std::size_t i = 0; i < cert.graphs.size(); ++i) {
    for (std::size_t j = i + 1; j < cert.graphs.size(); ++j) {
      if (!clopen_disjoint(cert.graphs[i].range(chain), cert.graphs[j].range(chain), chain)) {
        v.ranges_disjoint = false;
      }
    }
  }
  v.graphs = std::all_of(cert.graphs.begin(), cert.graphs.end(),
                         [&](const auto& gi) { return validate_graph(gi, chain); });
  v.inside_Gn = std::all_of(cert.graphs.begin(), cert.graphs.end(), [&](const auto& gi) {
    return std::all_of(gi.patches().begin(), gi.patches().end(), [&](const ArrowPatch& p) {
      return membership_Gn(p, n, tile, chain).all();
    });
  });
  v.inequality_chain = b.holds();
  if (!v.all()) throw std::logic_error("almost_af_certificate: emitted certificate failed validation");
  return cert;
}

}  // namespace gbd
