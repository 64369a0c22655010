#pragma once

// Exact arithmetic for the shipped amenable residually finite groups (integer
// lattices Z^d and the discrete Heisenberg group H3(Z)) together with nested
// congruence chains L_1 > L_2 > ... of finite-index normal subgroups.

#include "gbd/error.hpp"
#include "gbd/numeric.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gbd {

enum class GroupKind { lattice, heisenberg };

std::string to_string(GroupKind kind);
GroupKind parse_group_kind(std::string_view name);

struct GroupSignature {
  GroupKind kind = GroupKind::lattice;
  std::size_t rank = 0;

  friend bool operator==(const GroupSignature&, const GroupSignature&) = default;
  std::string to_string() const;
};

/// An element of Z^d (coordinates are added) or of H3(Z) with the law
/// (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').
class GroupElement {
 public:
  GroupElement() = default;
  GroupElement(GroupKind kind, std::vector<Integer> coords);

  static GroupElement lattice(std::vector<Integer> coords);
  static GroupElement heisenberg(Integer a, Integer b, Integer c);
  static GroupElement identity(GroupSignature sig);

  GroupKind kind() const noexcept { return kind_; }
  std::size_t rank() const noexcept { return coords_.size(); }
  GroupSignature signature() const noexcept { return {kind_, coords_.size()}; }
  const std::vector<Integer>& coords() const noexcept { return coords_; }

  bool is_identity() const;
  GroupElement inverse() const;
  std::string to_string() const;

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b);

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.kind_ == b.kind_ && a.coords_ == b.coords_;
  }
  /// Lexicographic coordinate order (kind first).
  friend std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b);

 private:
  GroupKind kind_ = GroupKind::lattice;
  std::vector<Integer> coords_;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept;
};

enum class GroupOpMode { multiply, invert_first };

/// a*b, or a^-1 * b.  Throws StructuralError when a and b live in different groups.
GroupElement group_op(const GroupElement& a, const GroupElement& b,
                      GroupOpMode mode = GroupOpMode::multiply);

class GroupDescriptor {
 public:
  GroupDescriptor(GroupKind kind, std::size_t rank);

  static GroupDescriptor lattice(std::size_t rank) { return {GroupKind::lattice, rank}; }
  static GroupDescriptor heisenberg() { return {GroupKind::heisenberg, 3}; }

  GroupKind kind() const noexcept { return sig_.kind; }
  std::size_t rank() const noexcept { return sig_.rank; }
  GroupSignature signature() const noexcept { return sig_; }

  GroupElement identity() const { return GroupElement::identity(sig_); }

  /// Symmetric generating set: +-e_i for lattices, +-(1,0,0), +-(0,1,0) for H3.
  const std::vector<GroupElement>& generators() const noexcept { return generators_; }

  GroupElement element(std::vector<Integer> coords) const;
  GroupElement element(std::initializer_list<long long> coords) const;
  bool contains(const GroupElement& g) const noexcept { return g.signature() == sig_; }
  void require(const GroupElement& g) const;

  friend bool operator==(const GroupDescriptor& a, const GroupDescriptor& b) {
    return a.sig_ == b.sig_;
  }

 private:
  GroupSignature sig_;
  std::vector<GroupElement> generators_;
};

/// All elements of word length <= radius over the descriptor's generators, sorted.
std::vector<GroupElement> word_ball(const GroupDescriptor& group, std::size_t radius);

using Label = std::uint64_t;

/// Coset labels lambda_n : G -> {0, ..., index_n - 1} for the congruence chain
/// L_n = kernel of reduction mod m_n on every coordinate. Levels are 1-based.
///
/// A label is the big-endian mixed-radix encoding of the nonnegative residue
/// vector, so label order is the lexicographic order of canonical
/// representatives. Nestedness (m_n | m_{n+1}) is not enforced here; use
/// check_chain, or the config loader, which rejects non-nested chains.
class SubgroupChain {
 public:
  SubgroupChain(GroupDescriptor group, std::vector<std::uint64_t> moduli);

  /// Per-level, per-coordinate moduli. Rejected unless each level uses one
  /// modulus on every coordinate (mixed Heisenberg kernels are not normal).
  static SubgroupChain from_coordinate_moduli(GroupDescriptor group,
                                              const std::vector<std::vector<std::uint64_t>>& moduli);

  const GroupDescriptor& group() const noexcept { return group_; }
  std::size_t depth() const noexcept { return moduli_.size(); }
  const std::vector<std::uint64_t>& moduli() const noexcept { return moduli_; }
  std::uint64_t modulus(std::size_t level) const;
  std::uint64_t index(std::size_t level) const;

  void check_level(std::size_t level) const;

  Label label(const GroupElement& x, std::size_t level) const;
  std::vector<std::uint64_t> residues(Label label, std::size_t level) const;
  Label encode(std::span<const std::uint64_t> residues, std::size_t level) const;

  /// Canonical representative: the element whose coordinates are the residues.
  GroupElement representative(Label label, std::size_t level) const;

  /// phi_{to,from}: level-`from` label to level-`to` label, to <= from.
  Label project(Label label, std::size_t from, std::size_t to) const;

  /// All level-`deeper` labels projecting onto `label` at `level`, sorted.
  std::vector<Label> fiber(Label label, std::size_t level, std::size_t deeper) const;

  bool in_subgroup(const GroupElement& x, std::size_t level) const { return label(x, level) == 0; }

  /// Label of g * x for any x with the given label (well defined by normality).
  Label act(const GroupElement& g, Label label, std::size_t level) const;

  /// Generators of L_n as a subgroup: m_n e_i (and m_n e_3 for H3), with inverses.
  std::vector<GroupElement> kernel_generators(std::size_t level) const;

  friend bool operator==(const SubgroupChain& a, const SubgroupChain& b) {
    return a.group_ == b.group_ && a.moduli_ == b.moduli_;
  }

 private:
  GroupDescriptor group_;
  std::vector<std::uint64_t> moduli_;
  std::vector<std::uint64_t> indices_;
};

inline Label coset_label(const GroupElement& x, std::size_t level, const SubgroupChain& chain) {
  return chain.label(x, level);
}

struct PropertyCheck {
  bool passed = true;
  std::string witness;  // empty when passed
};

struct ChainDiagnostics {
  PropertyCheck nestedness;
  PropertyCheck normality;
  PropertyCheck homomorphism;
  PropertyCheck compatibility;
  PropertyCheck surjectivity;
  std::size_t probes = 0;

  bool all_passed() const {
    return nestedness.passed && normality.passed && homomorphism.passed &&
           compatibility.passed && surjectivity.passed;
  }
};

/// Checks the chain on the word ball of the given radius. Failures are
/// reported with a witness, never thrown.
ChainDiagnostics check_chain(const SubgroupChain& chain, std::size_t probe_radius = 3);

/// No level of the chain separates the set; carries a colliding pair at the deepest level.
class ChainDepthInsufficient : public ExhaustedError {
 public:
  ChainDepthInsufficient(GroupElement first, GroupElement second);
  const GroupElement& first() const noexcept { return first_; }
  const GroupElement& second() const noexcept { return second_; }

 private:
  GroupElement first_;
  GroupElement second_;
};

/// Least level n with lambda_n injective on F.
std::size_t check_separation(std::span<const GroupElement> elements, const SubgroupChain& chain);

/// First pair in `elements` sharing a level-n label, if any.
std::optional<std::pair<GroupElement, GroupElement>> find_collision(
    std::span<const GroupElement> elements, std::size_t level, const SubgroupChain& chain);

}  // namespace gbd
