#pragma once

// The profinite completion truncated at a finite depth: points are coherent
// label sequences, basic compact-open sets are cylinders pi_n^-1(x L_n), and G
// acts on the left through the coset labels.

#include "gbd/folner.hpp"
#include "gbd/groups.hpp"
#include "gbd/tiling.hpp"

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace gbd {

/// A point of the completion known to depth N: labels (x_1, ..., x_N) with
/// phi_{n,m}(x_m) = x_n. Coherence is checked against a chain by make_point.
class CoherentPoint {
 public:
  CoherentPoint() = default;
  explicit CoherentPoint(std::vector<Label> labels) : labels_(std::move(labels)) {}

  std::size_t depth() const noexcept { return labels_.size(); }
  Label label(std::size_t level) const;
  const std::vector<Label>& labels() const noexcept { return labels_; }
  std::string to_string() const;

  friend auto operator<=>(const CoherentPoint&, const CoherentPoint&) = default;

 private:
  std::vector<Label> labels_;
};

bool is_coherent(const CoherentPoint& point, const SubgroupChain& chain);

/// Validated construction; throws ValidationError on incoherent labels.
CoherentPoint make_point(std::vector<Label> labels, const SubgroupChain& chain);

/// The point with deepest label `label` at `level` (labels above it projected).
CoherentPoint point_from_label(Label label, std::size_t level, const SubgroupChain& chain);

struct Cylinder {
  std::size_t level = 1;
  Label label = 0;

  friend auto operator<=>(const Cylinder&, const Cylinder&) = default;
};

/// A finite union of cylinders in normal form: one shared level, sorted
/// distinct labels.
class ClopenSet {
 public:
  ClopenSet() = default;
  ClopenSet(std::size_t level, std::vector<Label> labels);
  explicit ClopenSet(const Cylinder& cylinder) : ClopenSet(cylinder.level, {cylinder.label}) {}

  std::size_t level() const noexcept { return level_; }
  const std::vector<Label>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }
  bool contains(Label label) const;
  std::vector<Cylinder> cylinders() const;

  friend bool operator==(const ClopenSet&, const ClopenSet&) = default;

 private:
  std::size_t level_ = 1;
  std::vector<Label> labels_;
};

/// Normalized Haar mass: |labels| / index_level.
Rational haar_mass(const ClopenSet& set, const SubgroupChain& chain);

ClopenSet refine_to(const ClopenSet& set, std::size_t level, const SubgroupChain& chain);

/// The same set at a coarser level, if it is a union of full fibers there.
std::optional<ClopenSet> coarsen_to(const ClopenSet& set, std::size_t level,
                                    const SubgroupChain& chain);

/// Set operations, evaluated at the deeper of the two levels.
ClopenSet clopen_union(const ClopenSet& a, const ClopenSet& b, const SubgroupChain& chain);
ClopenSet clopen_intersection(const ClopenSet& a, const ClopenSet& b, const SubgroupChain& chain);
bool clopen_equal(const ClopenSet& a, const ClopenSet& b, const SubgroupChain& chain);
bool clopen_disjoint(const ClopenSet& a, const ClopenSet& b, const SubgroupChain& chain);

bool contains(const ClopenSet& set, const CoherentPoint& point);

/// (lambda_1(g), ..., lambda_N(g)).
CoherentPoint embed_point(const GroupElement& g, std::size_t depth, const SubgroupChain& chain);

/// Left multiplication by g, level by level.
CoherentPoint act(const GroupElement& g, const CoherentPoint& point, const SubgroupChain& chain);
Cylinder act(const GroupElement& g, const Cylinder& cylinder, const SubgroupChain& chain);
ClopenSet act(const GroupElement& g, const ClopenSet& set, const SubgroupChain& chain);

/// Normal form of a union of cylinders at mixed levels, expressed at the deepest level present.
ClopenSet decompose_clopen(std::span<const Cylinder> cylinders, const SubgroupChain& chain);

/// L_n ∩ K K^-1 F.
FiniteElementSet periodicity_window(std::size_t level, const Tile& k, const FiniteElementSet& f,
                                    const SubgroupChain& chain,
                                    std::size_t size_cap = default_size_cap);

/// sup over level-n labels c of |f(l^-1 c) - f(c)| for a locally constant f
/// given by its values on level-n labels.
Rational almost_periodicity_defect(std::span<const Rational> f, std::size_t level,
                                   const GroupElement& l, const SubgroupChain& chain);

/// Identity point followed by g·x, g²·x, ... (steps + 1 points).
std::vector<CoherentPoint> odometer_orbit(const GroupElement& g, std::size_t steps,
                                          std::size_t depth, const SubgroupChain& chain);

}  // namespace gbd
