#include "gbd/folner.hpp"

#include <algorithm>
#include <iterator>

namespace gbd {

namespace {

FiniteElementSet from_sorted(std::vector<GroupElement> v) {
  return FiniteElementSet(std::move(v));
}

void require_compatible(const FiniteElementSet& a, const FiniteElementSet& b) {
  auto sa = a.signature();
  auto sb = b.signature();
  if (sa && sb && *sa != *sb) {
    throw StructuralError("set group mismatch: " + sa->to_string() + " vs " + sb->to_string());
  }
}

void require_cap(std::size_t a, std::size_t b, std::size_t cap) {
  if (a != 0 && b > cap / a) {
    throw SizeCapExceeded("product of sets of size " + std::to_string(a) + " and " +
                          std::to_string(b) + " exceeds the size cap " + std::to_string(cap));
  }
}

}  // namespace

FiniteElementSet::FiniteElementSet(std::vector<GroupElement> elements, std::size_t size_cap)
    : elements_(std::move(elements)) {
  if (elements_.size() > size_cap) {
    throw SizeCapExceeded("set of " + std::to_string(elements_.size()) +
                          " elements exceeds the size cap " + std::to_string(size_cap));
  }
  if (!std::is_sorted(elements_.begin(), elements_.end())) {
    std::sort(elements_.begin(), elements_.end());
  }
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  if (!elements_.empty()) {
    const auto sig = elements_.front().signature();
    for (const auto& g : elements_) {
      if (g.signature() != sig) {
        throw StructuralError("set mixes groups " + sig.to_string() + " and " +
                              g.signature().to_string());
      }
    }
  }
}

bool FiniteElementSet::contains(const GroupElement& g) const {
  return std::binary_search(elements_.begin(), elements_.end(), g);
}

std::optional<GroupSignature> FiniteElementSet::signature() const {
  if (elements_.empty()) return std::nullopt;
  return elements_.front().signature();
}

std::string FiniteElementSet::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i) out += ", ";
    out += elements_[i].to_string();
  }
  return out + "}";
}

FiniteElementSet set_union(const FiniteElementSet& a, const FiniteElementSet& b) {
  require_compatible(a, b);
  std::vector<GroupElement> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return from_sorted(std::move(out));
}

FiniteElementSet set_intersection(const FiniteElementSet& a, const FiniteElementSet& b) {
  require_compatible(a, b);
  std::vector<GroupElement> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return from_sorted(std::move(out));
}

FiniteElementSet set_difference(const FiniteElementSet& a, const FiniteElementSet& b) {
  require_compatible(a, b);
  std::vector<GroupElement> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return from_sorted(std::move(out));
}

FiniteElementSet symmetric_difference(const FiniteElementSet& a, const FiniteElementSet& b) {
  require_compatible(a, b);
  std::vector<GroupElement> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return from_sorted(std::move(out));
}

bool is_subset(const FiniteElementSet& a, const FiniteElementSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool are_disjoint(const FiniteElementSet& a, const FiniteElementSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return false;
    }
  }
  return true;
}

FiniteElementSet product(const FiniteElementSet& a, const FiniteElementSet& b,
                         std::size_t size_cap) {
  require_compatible(a, b);
  require_cap(a.size(), b.size(), size_cap);
  std::vector<GroupElement> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) out.push_back(x * y);
  }
  return FiniteElementSet(std::move(out), size_cap);
}

FiniteElementSet inverse_set(const FiniteElementSet& a) {
  std::vector<GroupElement> out;
  out.reserve(a.size());
  for (const auto& x : a) out.push_back(x.inverse());
  return FiniteElementSet(std::move(out));
}

FiniteElementSet left_translate(const GroupElement& g, const FiniteElementSet& a) {
  std::vector<GroupElement> out;
  out.reserve(a.size());
  for (const auto& x : a) out.push_back(g * x);
  return FiniteElementSet(std::move(out));
}

FiniteElementSet right_translate(const FiniteElementSet& a, const GroupElement& g) {
  std::vector<GroupElement> out;
  out.reserve(a.size());
  for (const auto& x : a) out.push_back(x * g);
  return FiniteElementSet(std::move(out));
}

FiniteElementSet s_boundary(const FiniteElementSet& s, const FiniteElementSet& k,
                            std::size_t size_cap) {
  if (s.empty() || k.empty()) throw ValidationError("s_boundary needs nonempty S and K");
  const auto sk = product(s, k, size_cap);
  const auto s_inv = inverse_set(s);
  std::vector<GroupElement> out;
  for (const auto& x : sk) {
    bool meets_k = false;
    bool meets_complement = false;
    for (const auto& t : s_inv) {
      if (k.contains(t * x)) {
        meets_k = true;
      } else {
        meets_complement = true;
      }
      if (meets_k && meets_complement) {
        out.push_back(x);
        break;
      }
    }
  }
  return from_sorted(std::move(out));
}

FiniteElementSet translate_intersection(const FiniteElementSet& s, const FiniteElementSet& k) {
  if (s.empty()) throw ValidationError("translate_intersection needs a nonempty S");
  require_compatible(s, k);
  // x lies in every sK iff s^-1 x lies in K for every s; candidates come from the first translate.
  const auto s_inv = inverse_set(s);
  std::vector<GroupElement> out;
  for (const auto& x : left_translate(s[0], k)) {
    if (std::all_of(s_inv.begin(), s_inv.end(), [&](const auto& t) { return k.contains(t * x); })) {
      out.push_back(x);
    }
  }
  return from_sorted(std::move(out));
}

std::size_t translate_difference_size(const FiniteElementSet& k, const GroupElement& s,
                                      Side side) {
  if (auto sig = k.signature(); sig && *sig != s.signature()) {
    throw StructuralError("translating element " + s.to_string() + " is not in group " +
                          sig->to_string());
  }
  // |K △ T| = 2(|K| - |K ∩ T|) since the translate T has |K| elements.
  std::size_t common = 0;
  for (const auto& x : k) {
    if (k.contains(side == Side::left ? s * x : x * s)) ++common;
  }
  return 2 * (k.size() - common);
}

Rational folner_defect(const FiniteElementSet& k, const GroupElement& s, Side side) {
  if (k.empty()) throw ValidationError("folner_defect of an empty set");
  return Rational(Integer(translate_difference_size(k, s, side)), Integer(k.size()));
}

Rational max_two_sided_defect(const FiniteElementSet& k, std::span<const GroupElement> s) {
  Rational best = 0;
  for (const auto& g : s) {
    best = std::max({best, folner_defect(k, g, Side::left), folner_defect(k, g, Side::right)});
  }
  return best;
}

}  // namespace gbd
