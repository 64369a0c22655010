#pragma once

// The transformation groupoid of the left action of G on its truncated
// completion. An arrow (x, g) goes from x to g·x; (x, g)(g·x, h) = (x, hg).

#include "gbd/odometer.hpp"
#include "gbd/tiling.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace gbd {

struct Arrow {
  CoherentPoint point;
  GroupElement mover;

  friend bool operator==(const Arrow&, const Arrow&) = default;
  std::string to_string() const;
};

class NonComposable : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// (x, g)(y, h) = (x, hg), defined when y = g·x.
Arrow compose(const Arrow& first, const Arrow& second, const SubgroupChain& chain);
/// (x, g)^-1 = (g·x, g^-1).
Arrow invert(const Arrow& arrow, const SubgroupChain& chain);
inline const CoherentPoint& source(const Arrow& arrow) { return arrow.point; }
CoherentPoint range(const Arrow& arrow, const SubgroupChain& chain);

/// The compact-open set {(x, g) : x in base}.
struct ArrowPatch {
  ClopenSet base;
  GroupElement mover;

  friend bool operator==(const ArrowPatch&, const ArrowPatch&) = default;
};

/// A finite union of arrow patches, normalized: all bases at one level, one
/// patch per mover, patches sorted by mover, no empty bases.
class CompactGroupoidSet {
 public:
  CompactGroupoidSet() = default;
  CompactGroupoidSet(std::vector<ArrowPatch> patches, const SubgroupChain& chain);

  const std::vector<ArrowPatch>& patches() const noexcept { return patches_; }
  std::size_t level() const noexcept { return level_; }
  bool empty() const noexcept { return patches_.empty(); }

  /// S = {g : (G̃ × {g}) ∩ C ≠ ∅}.
  FiniteElementSet mover_set() const;
  ClopenSet source() const;
  ClopenSet range(const SubgroupChain& chain) const;
  /// Arrows at base resolution: (cylinder, mover).
  std::vector<std::pair<Cylinder, GroupElement>> arrows() const;

  friend bool operator==(const CompactGroupoidSet&, const CompactGroupoidSet&) = default;

 private:
  std::vector<ArrowPatch> patches_;
  std::size_t level_ = 1;
};

/// Whether the arrow lies in G_n = {(g x, g1 g^-1) : x in L̃_n, g, g1 in K_n}:
/// writing the source as g·x with g the tile element of its level-n label,
/// the arrow is in G_n iff mover·g lies in K_n.
bool membership_Gn(const Arrow& arrow, std::size_t level, const Tile& tile,
                   const SubgroupChain& chain);

struct PatchMembership {
  std::vector<std::pair<Cylinder, bool>> cylinders;  // level-n resolution

  bool all() const;
  bool any() const;
};

PatchMembership membership_Gn(const ArrowPatch& patch, std::size_t level, const Tile& tile,
                              const SubgroupChain& chain);

struct NestingCheck {
  bool passed = true;
  std::size_t arrows_checked = 0;
  std::optional<Arrow> witness;
};

/// Exhaustively checks G_small ⊆ G_big at the big tile's resolution.
NestingCheck verify_nesting(const Tile& small, const Tile& big, const SubgroupChain& chain);
NestingCheck verify_nesting(const NestedTileChain& nested, std::size_t k,
                            const SubgroupChain& chain);

/// True iff source and range are injective on the arrows of C.
bool validate_graph(const CompactGroupoidSet& set, const SubgroupChain& chain);

struct CertificateValidation {
  bool sources_equal = false;
  bool ranges_disjoint = false;
  bool graphs = false;
  bool inside_Gn = false;
  bool inequality_chain = false;

  bool all() const {
    return sources_equal && ranges_disjoint && graphs && inside_Gn && inequality_chain;
  }
  friend bool operator==(const CertificateValidation&, const CertificateValidation&) = default;
};

/// The numbers behind |K| <= sum_s |K_n \ s^-1 K_n| <= |S| max_s |K_n △ s K_n| < |K_n| / m.
struct CertificateBounds {
  std::uint64_t k_size = 0;
  std::uint64_t sum_differences = 0;
  std::uint64_t max_symmetric_difference = 0;
  std::uint64_t mover_count = 0;
  std::uint64_t tile_size = 0;
  std::uint64_t m = 0;

  bool holds() const;
  friend bool operator==(const CertificateBounds&, const CertificateBounds&) = default;
};

struct GraphCertificate {
  GroupSignature group;
  std::vector<std::uint64_t> moduli;
  std::size_t level = 0;
  FiniteElementSet tile;
  FiniteElementSet movers;
  FiniteElementSet k;
  /// sigma[i] lists (g, sigma_i(g)) for g in K, sorted by g.
  std::vector<std::vector<std::pair<GroupElement, GroupElement>>> sigma;
  std::vector<CompactGroupoidSet> graphs;
  CompactGroupoidSet input;
  CertificateBounds bounds;
  CertificateValidation validation;

  friend bool operator==(const GraphCertificate&, const GraphCertificate&) = default;
};

class LevelExhausted : public ExhaustedError {
 public:
  using ExhaustedError::ExhaustedError;
};

/// The compact set meets G_n at the selected level, or contains unit arrows.
class PreconditionViolated : public ValidationError {
 public:
  explicit PreconditionViolated(ArrowPatch witness);
  const ArrowPatch& witness() const noexcept { return witness_; }

 private:
  ArrowPatch witness_;
};

/// Index into nested.levels of the first level with
/// |S| · m · max_s |K_n △ s K_n| < |K_n|, if any.
std::optional<std::size_t> certificate_level(const FiniteElementSet& movers, std::uint64_t m,
                                             const NestedTileChain& nested);

/// Builds m compact graphs inside G_n with source s(C) and pairwise disjoint
/// ranges. Every validation entry of the result is true; a failed internal
/// check throws std::logic_error.
GraphCertificate almost_af_certificate(const CompactGroupoidSet& c, std::uint64_t m,
                                       const NestedTileChain& nested, const SubgroupChain& chain);

}  // namespace gbd
