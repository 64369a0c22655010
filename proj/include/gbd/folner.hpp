#pragma once

#include "gbd/groups.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace gbd {

inline constexpr std::size_t default_size_cap = std::size_t{1} << 24;

/// A finite set of group elements, stored sorted and duplicate-free.
/// All elements share one group; construction fails above the size cap.
class FiniteElementSet {
 public:
  FiniteElementSet() = default;
  explicit FiniteElementSet(std::vector<GroupElement> elements,
                            std::size_t size_cap = default_size_cap);
  FiniteElementSet(std::initializer_list<GroupElement> elements)
      : FiniteElementSet(std::vector<GroupElement>(elements)) {}

  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  bool contains(const GroupElement& g) const;
  std::optional<GroupSignature> signature() const;

  std::span<const GroupElement> elements() const noexcept { return elements_; }
  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }
  const GroupElement& operator[](std::size_t i) const { return elements_[i]; }

  std::string to_string() const;

  friend bool operator==(const FiniteElementSet&, const FiniteElementSet&) = default;

 private:
  std::vector<GroupElement> elements_;
};

FiniteElementSet set_union(const FiniteElementSet& a, const FiniteElementSet& b);
FiniteElementSet set_intersection(const FiniteElementSet& a, const FiniteElementSet& b);
FiniteElementSet set_difference(const FiniteElementSet& a, const FiniteElementSet& b);
FiniteElementSet symmetric_difference(const FiniteElementSet& a, const FiniteElementSet& b);
bool is_subset(const FiniteElementSet& a, const FiniteElementSet& b);
bool are_disjoint(const FiniteElementSet& a, const FiniteElementSet& b);

/// The product set AB = {ab}. Throws SizeCapExceeded when |A||B| exceeds the cap.
FiniteElementSet product(const FiniteElementSet& a, const FiniteElementSet& b,
                         std::size_t size_cap = default_size_cap);
FiniteElementSet inverse_set(const FiniteElementSet& a);
FiniteElementSet left_translate(const GroupElement& g, const FiniteElementSet& a);
FiniteElementSet right_translate(const FiniteElementSet& a, const GroupElement& g);

/// The S-boundary SK ∩ S(K^c) = {x in SK : S^-1 x meets both K and K^c}.
FiniteElementSet s_boundary(const FiniteElementSet& s, const FiniteElementSet& k,
                            std::size_t size_cap = default_size_cap);

/// The intersection of the left translates sK over s in S.
FiniteElementSet translate_intersection(const FiniteElementSet& s, const FiniteElementSet& k);

enum class Side { left, right };

/// |K △ sK| (left) or |K △ Ks| (right).
std::size_t translate_difference_size(const FiniteElementSet& k, const GroupElement& s, Side side);

/// |K △ sK| / |K| or |K △ Ks| / |K|, exactly.
Rational folner_defect(const FiniteElementSet& k, const GroupElement& s, Side side);

/// Largest left or right defect over the given translating elements.
Rational max_two_sided_defect(const FiniteElementSet& k, std::span<const GroupElement> s);

}  // namespace gbd
