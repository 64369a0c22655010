#include "gbd/odometer.hpp"

#include <algorithm>
#include <iterator>

namespace gbd {

Label CoherentPoint::label(std::size_t level) const {
  if (level < 1 || level > labels_.size()) {
    throw LevelOutOfRange("point of depth " + std::to_string(labels_.size()) +
                          " has no level " + std::to_string(level));
  }
  return labels_[level - 1];
}

std::string CoherentPoint::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(labels_[i]);
  }
  return out + ")";
}

bool is_coherent(const CoherentPoint& point, const SubgroupChain& chain) {
  if (point.depth() > chain.depth()) return false;
  for (std::size_t m = 1; m <= point.depth(); ++m) {
    if (point.label(m) >= chain.index(m)) return false;
    if (m > 1 && chain.project(point.label(m), m, m - 1) != point.label(m - 1)) return false;
  }
  return true;
}

CoherentPoint make_point(std::vector<Label> labels, const SubgroupChain& chain) {
  CoherentPoint p(std::move(labels));
  if (!is_coherent(p, chain)) throw ValidationError("incoherent label sequence " + p.to_string());
  return p;
}

CoherentPoint point_from_label(Label label, std::size_t level, const SubgroupChain& chain) {
  chain.check_level(level);
  std::vector<Label> labels(level);
  for (std::size_t n = 1; n <= level; ++n) labels[n - 1] = chain.project(label, level, n);
  return CoherentPoint(std::move(labels));
}

ClopenSet::ClopenSet(std::size_t level, std::vector<Label> labels)
    : level_(level), labels_(std::move(labels)) {
  if (level_ == 0) throw LevelOutOfRange("cylinder levels start at 1");
  std::sort(labels_.begin(), labels_.end());
  labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());
}

bool ClopenSet::contains(Label label) const {
  return std::binary_search(labels_.begin(), labels_.end(), label);
}

std::vector<Cylinder> ClopenSet::cylinders() const {
  std::vector<Cylinder> out;
  out.reserve(labels_.size());
  for (Label c : labels_) out.push_back({level_, c});
  return out;
}

Rational haar_mass(const ClopenSet& set, const SubgroupChain& chain) {
  return Rational(Integer(set.size()), Integer(chain.index(set.level())));
}

ClopenSet refine_to(const ClopenSet& set, std::size_t level, const SubgroupChain& chain) {
  if (level == set.level()) return set;
  std::vector<Label> out;
  for (Label c : set.labels()) {
    auto f = chain.fiber(c, set.level(), level);
    out.insert(out.end(), f.begin(), f.end());
  }
  return {level, std::move(out)};
}

std::optional<ClopenSet> coarsen_to(const ClopenSet& set, std::size_t level,
                                    const SubgroupChain& chain) {
  if (level > set.level()) return refine_to(set, level, chain);
  std::vector<Label> coarse;
  for (Label c : set.labels()) coarse.push_back(chain.project(c, set.level(), level));
  ClopenSet candidate(level, std::move(coarse));
  if (refine_to(candidate, set.level(), chain) != set) return std::nullopt;
  return candidate;
}

ClopenSet clopen_union(const ClopenSet& a, const ClopenSet& b, const SubgroupChain& chain) {
  const std::size_t level = std::max(a.level(), b.level());
  auto x = refine_to(a, level, chain);
  auto y = refine_to(b, level, chain);
  std::vector<Label> out;
  std::set_union(x.labels().begin(), x.labels().end(), y.labels().begin(), y.labels().end(),
                 std::back_inserter(out));
  return {level, std::move(out)};
}

ClopenSet clopen_intersection(const ClopenSet& a, const ClopenSet& b, const SubgroupChain& chain) {
  const std::size_t level = std::max(a.level(), b.level());
  auto x = refine_to(a, level, chain);
  auto y = refine_to(b, level, chain);
  std::vector<Label> out;
  std::set_intersection(x.labels().begin(), x.labels().end(), y.labels().begin(),
                        y.labels().end(), std::back_inserter(out));
  return {level, std::move(out)};
}

bool clopen_equal(const ClopenSet& a, const ClopenSet& b, const SubgroupChain& chain) {
  const std::size_t level = std::max(a.level(), b.level());
  return refine_to(a, level, chain) == refine_to(b, level, chain);
}

bool clopen_disjoint(const ClopenSet& a, const ClopenSet& b, const SubgroupChain& chain) {
  return clopen_intersection(a, b, chain).empty();
}

bool contains(const ClopenSet& set, const CoherentPoint& point) {
  return set.contains(point.label(set.level()));
}

CoherentPoint embed_point(const GroupElement& g, std::size_t depth, const SubgroupChain& chain) {
  if (depth > chain.depth()) {
    throw LevelOutOfRange("depth " + std::to_string(depth) + " exceeds chain length " +
                          std::to_string(chain.depth()));
  }
  std::vector<Label> labels(depth);
  for (std::size_t n = 1; n <= depth; ++n) labels[n - 1] = chain.label(g, n);
  return CoherentPoint(std::move(labels));
}

CoherentPoint act(const GroupElement& g, const CoherentPoint& point, const SubgroupChain& chain) {
  std::vector<Label> labels(point.depth());
  for (std::size_t n = 1; n <= point.depth(); ++n) {
    labels[n - 1] = chain.act(g, point.label(n), n);
  }
  return CoherentPoint(std::move(labels));
}

Cylinder act(const GroupElement& g, const Cylinder& cylinder, const SubgroupChain& chain) {
  return {cylinder.level, chain.act(g, cylinder.label, cylinder.level)};
}

ClopenSet act(const GroupElement& g, const ClopenSet& set, const SubgroupChain& chain) {
  std::vector<Label> out;
  out.reserve(set.size());
  for (Label c : set.labels()) out.push_back(chain.act(g, c, set.level()));
  return {set.level(), std::move(out)};
}

ClopenSet decompose_clopen(std::span<const Cylinder> cylinders, const SubgroupChain& chain) {
  if (cylinders.empty()) throw ValidationError("decompose_clopen needs at least one cylinder");
  std::size_t level = 0;
  for (const auto& c : cylinders) {
    chain.check_level(c.level);
    level = std::max(level, c.level);
  }
  std::vector<Label> out;
  for (const auto& c : cylinders) {
    auto f = chain.fiber(c.label, c.level, level);
    out.insert(out.end(), f.begin(), f.end());
  }
  return {level, std::move(out)};
}

FiniteElementSet periodicity_window(std::size_t level, const Tile& k, const FiniteElementSet& f,
                                    const SubgroupChain& chain, std::size_t size_cap) {
  if (!is_subset(f, k.elements())) throw ValidationError("periodicity_window requires F ⊆ K");
  const auto window = product(product(k.elements(), inverse_set(k.elements()), size_cap), f,
                              size_cap);
  std::vector<GroupElement> out;
  for (const auto& x : window) {
    if (chain.in_subgroup(x, level)) out.push_back(x);
  }
  return FiniteElementSet(std::move(out));
}

Rational almost_periodicity_defect(std::span<const Rational> f, std::size_t level,
                                   const GroupElement& l, const SubgroupChain& chain) {
  if (f.size() != chain.index(level)) {
    throw ValidationError("function has " + std::to_string(f.size()) + " values for " +
                          std::to_string(chain.index(level)) + " level-" + std::to_string(level) +
                          " labels");
  }
  const auto l_inv = l.inverse();
  Rational worst = 0;
  for (Label c = 0; c < f.size(); ++c) {
    Rational d = abs(f[chain.act(l_inv, c, level)] - f[c]);
    if (d > worst) worst = d;
  }
  return worst;
}

std::vector<CoherentPoint> odometer_orbit(const GroupElement& g, std::size_t steps,
                                          std::size_t depth, const SubgroupChain& chain) {
  std::vector<CoherentPoint> out;
  out.reserve(steps + 1);
  out.push_back(embed_point(chain.group().identity(), depth, chain));
  for (std::size_t t = 0; t < steps; ++t) out.push_back(act(g, out.back(), chain));
  return out;
}

}  // namespace gbd
