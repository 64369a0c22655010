#pragma once

#include "gbd/folner.hpp"
#include "gbd/groups.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gbd {

struct TilingCheck;

/// A finite set K that is an exact transversal of G/L_n, i.e. G = K L_n is a
/// tiling. Only verify_tiling creates tiles, so every Tile is valid.
class Tile {
 public:
  const FiniteElementSet& elements() const noexcept { return elements_; }
  std::size_t level() const noexcept { return level_; }
  const std::optional<FiniteElementSet>& core() const noexcept { return core_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool contains(const GroupElement& g) const { return elements_.contains(g); }

  /// The unique tile element carrying the given level-n label.
  const GroupElement& element_with_label(Label label) const;

  friend bool operator==(const Tile& a, const Tile& b) {
    return a.level_ == b.level_ && a.elements_ == b.elements_ && a.core_ == b.core_;
  }

 private:
  friend TilingCheck verify_tiling(const FiniteElementSet&, std::size_t, const SubgroupChain&,
                                   std::optional<FiniteElementSet>);
  Tile(FiniteElementSet elements, std::size_t level, std::vector<std::size_t> by_label,
       std::optional<FiniteElementSet> core);

  FiniteElementSet elements_;
  std::size_t level_ = 0;
  std::vector<std::size_t> by_label_;
  std::optional<FiniteElementSet> core_;
};

struct TilingFailure {
  enum class Reason { collision, cardinality, core_not_contained };
  Reason reason = Reason::collision;
  std::optional<std::pair<GroupElement, GroupElement>> pair;
  std::size_t size = 0;
  std::uint64_t index = 0;

  std::string describe() const;
};

struct TilingCheck {
  std::optional<Tile> tile;
  std::optional<TilingFailure> failure;

  explicit operator bool() const noexcept { return tile.has_value(); }
};

/// Succeeds iff lambda_n is injective on K and |K| = index_n. Collisions are
/// reported before cardinality mismatches.
TilingCheck verify_tiling(const FiniteElementSet& k, std::size_t level, const SubgroupChain& chain,
                          std::optional<FiniteElementSet> core = std::nullopt);

/// verify_tiling, throwing ValidationError with the failure description.
Tile require_tile(const FiniteElementSet& k, std::size_t level, const SubgroupChain& chain,
                  std::optional<FiniteElementSet> core = std::nullopt);

class NotSeparated : public ValidationError {
 public:
  NotSeparated(GroupElement first, GroupElement second);
  const GroupElement& first() const noexcept { return first_; }
  const GroupElement& second() const noexcept { return second_; }

 private:
  GroupElement first_;
  GroupElement second_;
};

struct TransversalOptions {
  /// Passes of the boundary-reducing swap improver; 0 keeps the greedy completion.
  std::size_t improvement_passes = 4;
};

/// A tile containing F. Missing cosets get their canonical representative;
/// then non-F elements are moved within their coset (right multiplication by
/// generators of L_n) whenever that strictly shrinks the two-sided boundary
/// against the group's generators.
Tile build_transversal(const FiniteElementSet& core, std::size_t level, const SubgroupChain& chain,
                       const TransversalOptions& options = {});

/// big ∩ L_{small level}: the right-translation centers of a refinement.
FiniteElementSet tiling_centers(const Tile& big, std::size_t small_level,
                                const SubgroupChain& chain);

/// K' = small · (big ∩ L_{small level}), a tile at big's level partitioned by
/// the right translates small·l.
Tile refine_tile(const Tile& small, const Tile& big, const SubgroupChain& chain);

struct RefinementCheck {
  bool is_tile = false;
  bool cardinality = false;
  bool partition = false;
  bool boundary_inclusion = false;  // K' △ big ⊆ ∂_{small small^-1}(big)

  bool all() const { return is_tile && cardinality && partition && boundary_inclusion; }
};

RefinementCheck check_refinement(const Tile& small, const Tile& big, const Tile& refined,
                                 const SubgroupChain& chain);

enum class AcceptanceRule {
  measured,         // two-sided defects of K' measured directly against epsilon
  third_prescreen,  // sufficient conditions: |K' △ K| and defects of K below epsilon/3
};

using TileProvider = std::function<Tile(std::size_t level)>;

/// Tiles from build_transversal({identity}, n): boxes for lattices, cubes for H3
/// when improvement is disabled.
TileProvider canonical_tiles(const SubgroupChain& chain, TransversalOptions options = {});

struct NestedLevel {
  std::size_t level = 0;
  Tile tile;
  Rational defect;                // max two-sided defect over the selection set
  FiniteElementSet centers;       // previous tile's right-translation centers; empty for the first
};

struct NestedTileChain {
  std::vector<NestedLevel> levels;
  std::vector<Rational> epsilons;
  AcceptanceRule rule = AcceptanceRule::measured;
  FiniteElementSet selection_set;
};

class ChainExhausted : public ExhaustedError {
 public:
  ChainExhausted(std::size_t epsilon_index, Rational epsilon, std::optional<Rational> best_defect);
  std::size_t epsilon_index() const noexcept { return epsilon_index_; }
  const Rational& epsilon() const noexcept { return epsilon_; }
  /// Smallest measured defect among the scanned candidates; empty if none were left.
  const std::optional<Rational>& best_defect() const noexcept { return best_defect_; }

 private:
  std::size_t epsilon_index_;
  Rational epsilon_;
  std::optional<Rational> best_defect_;
};

/// For each epsilon_k picks the least level past the previous selection whose
/// refined tile passes the acceptance rule for every s in S.
NestedTileChain select_nested_chain(const SubgroupChain& chain, const FiniteElementSet& s,
                                    std::span<const Rational> epsilons,
                                    const TileProvider& provider,
                                    AcceptanceRule rule = AcceptanceRule::measured);

/// Every chain level, each tile refined against the previous one. Defects are
/// recorded against the group's generators.
NestedTileChain nest_all_levels(const SubgroupChain& chain, const TileProvider& provider);

}  // namespace gbd
