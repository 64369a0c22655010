#pragma once

#include "gbd/groupoid.hpp"
#include "gbd/odometer.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace gbd {

/// A probability measure on the completion determined at level n: exact mass per label.
class LevelMeasure {
 public:
  LevelMeasure(std::size_t level, std::vector<Rational> masses, const SubgroupChain& chain);

  /// The truncated normalized Haar measure, 1/index_n on every label.
  static LevelMeasure haar(std::size_t level, const SubgroupChain& chain);

  std::size_t level() const noexcept { return level_; }
  const std::vector<Rational>& masses() const noexcept { return masses_; }
  const Rational& mass(Label label) const { return masses_.at(label); }
  /// Mass of a clopen set at any level at or below this one, or above it when
  /// the set is a union of full fibers at this level.
  Rational mass(const ClopenSet& set, const SubgroupChain& chain) const;

  friend bool operator==(const LevelMeasure&, const LevelMeasure&) = default;

 private:
  std::size_t level_;
  std::vector<Rational> masses_;
};

struct WeightedPatch {
  ArrowPatch patch;
  Rational weight;
};

/// |sum w·mu(base) - sum w·mu(mover·base)|: the gap between the source and
/// range integrals of the weighted indicator function.
Rational invariance_defect(std::span<const WeightedPatch> f, const LevelMeasure& mu,
                           const SubgroupChain& chain);

struct OrbitStep {
  Label label = 0;
  std::optional<Label> from;        // empty for the root
  std::size_t generator = 0;        // index into the generator list

  friend bool operator==(const OrbitStep&, const OrbitStep&) = default;
};

struct InvariantMeasureSolution {
  LevelMeasure measure;
  bool unique = false;  // false means the generators are insufficient at this level
  std::vector<std::vector<Label>> classes;  // equality classes of mu, sorted
  std::vector<OrbitStep> trace;             // spanning tree of the class of label 0

  friend bool operator==(const InvariantMeasureSolution&, const InvariantMeasureSolution&) = default;
};

/// Imposes mu(g·c) = mu(c) for every generator and level-n label and collapses
/// the resulting equality classes. With a generating set the single class
/// forces the uniform vector. The returned measure is always the uniform one;
/// `unique` records whether the constraints pin it down.
InvariantMeasureSolution solve_invariant_measure(std::size_t level,
                                                 std::span<const GroupElement> generators,
                                                 const SubgroupChain& chain);

/// (1/|F|) sum over g in F of f(level-n label of g·x0).
Rational birkhoff_average(std::span<const Rational> f, std::size_t level,
                          const FiniteElementSet& window, const CoherentPoint& x0,
                          const SubgroupChain& chain);

/// Indicator vector of a clopen set at its own level.
std::vector<Rational> indicator(const ClopenSet& set, const SubgroupChain& chain);

}  // namespace gbd
