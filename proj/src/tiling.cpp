#include "gbd/tiling.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

namespace gbd {

namespace {

constexpr std::size_t no_element = std::numeric_limits<std::size_t>::max();

bool in_boundary(const GroupElement& x, const FiniteElementSet& s, const FiniteElementSet& k) {
  bool meets_k = false;
  bool meets_complement = false;
  for (const auto& t : s) {
    if (k.contains(t.inverse() * x)) {
      meets_k = true;
    } else {
      meets_complement = true;
    }
    if (meets_k && meets_complement) return true;
  }
  return false;
}

// Working state of the swap improver.
class SwapImprover {
 public:
  SwapImprover(std::vector<GroupElement> by_label, std::vector<bool> pinned,
               std::vector<GroupElement> directions, std::vector<GroupElement> moves)
      : by_label_(std::move(by_label)),
        pinned_(std::move(pinned)),
        directions_(std::move(directions)),
        moves_(std::move(moves)),
        members_(by_label_.begin(), by_label_.end()) {}

  void run(std::size_t passes) {
    for (std::size_t pass = 0; pass < passes; ++pass) {
      bool improved = false;
      for (std::size_t c = 0; c < by_label_.size(); ++c) {
        if (!pinned_[c] && try_improve(c)) improved = true;
      }
      if (!improved) break;
    }
  }

  std::vector<GroupElement> take() && { return std::move(by_label_); }

 private:
  // Number of ordered adjacency pairs (x, sx) and (x, xs) with both ends in the
  // set that involve y; `skip` is treated as absent.
  long adjacency(const GroupElement& y, const GroupElement* skip) const {
    long count = 0;
    auto present = [&](const GroupElement& z) {
      return (skip == nullptr || !(z == *skip)) && members_.count(z) != 0;
    };
    for (const auto& s : directions_) {
      const auto s_inv = s.inverse();
      count += present(s * y) + present(s_inv * y) + present(y * s) + present(y * s_inv);
    }
    return count;
  }

  bool try_improve(std::size_t c) {
    const GroupElement current = by_label_[c];
    const long base = adjacency(current, nullptr);
    long best_gain = 0;
    std::optional<GroupElement> best;
    for (const auto& l : moves_) {
      GroupElement candidate = current * l;
      const long gain = adjacency(candidate, &current) - base;
      if (gain > best_gain) {
        best_gain = gain;
        best = std::move(candidate);
      }
    }
    if (!best) return false;
    members_.erase(current);
    members_.insert(*best);
    by_label_[c] = std::move(*best);
    return true;
  }

  std::vector<GroupElement> by_label_;
  std::vector<bool> pinned_;
  std::vector<GroupElement> directions_;
  std::vector<GroupElement> moves_;
  std::unordered_set<GroupElement, GroupElementHash> members_;
};

}  // namespace

Tile::Tile(FiniteElementSet elements, std::size_t level, std::vector<std::size_t> by_label,
           std::optional<FiniteElementSet> core)
    : elements_(std::move(elements)),
      level_(level),
      by_label_(std::move(by_label)),
      core_(std::move(core)) {}

const GroupElement& Tile::element_with_label(Label label) const {
  if (label >= by_label_.size()) {
    throw ValidationError("label " + std::to_string(label) + " out of range for a level-" +
                          std::to_string(level_) + " tile");
  }
  return elements_[by_label_[label]];
}

std::string TilingFailure::describe() const {
  switch (reason) {
    case Reason::collision:
      return "not a transversal: " + pair->first.to_string() + " and " +
             pair->second.to_string() + " share a coset";
    case Reason::cardinality:
      return "not a transversal: " + std::to_string(size) + " elements for " +
             std::to_string(index) + " cosets";
    case Reason::core_not_contained:
      return "core " + pair->first.to_string() + " is not in the tile";
  }
  return {};
}

TilingCheck verify_tiling(const FiniteElementSet& k, std::size_t level, const SubgroupChain& chain,
                          std::optional<FiniteElementSet> core) {
  const std::uint64_t index = chain.index(level);
  if (index > std::max<std::uint64_t>(4 * std::uint64_t{k.size()}, 1024)) {
    // Far too few elements for a dense label table; only collisions can still be reported.
    if (auto collision = find_collision(k.elements(), level, chain)) {
      return {std::nullopt, TilingFailure{TilingFailure::Reason::collision, std::move(collision),
                                          k.size(), index}};
    }
    return {std::nullopt,
            TilingFailure{TilingFailure::Reason::cardinality, std::nullopt, k.size(), index}};
  }
  std::vector<std::size_t> by_label(index, no_element);
  for (std::size_t i = 0; i < k.size(); ++i) {
    std::size_t& slot = by_label[chain.label(k[i], level)];
    if (slot != no_element) {
      return {std::nullopt,
              TilingFailure{TilingFailure::Reason::collision, std::make_pair(k[slot], k[i]),
                            k.size(), index}};
    }
    slot = i;
  }
  if (k.size() != index) {
    return {std::nullopt,
            TilingFailure{TilingFailure::Reason::cardinality, std::nullopt, k.size(), index}};
  }
  if (core) {
    for (const auto& g : *core) {
      if (!k.contains(g)) {
        return {std::nullopt, TilingFailure{TilingFailure::Reason::core_not_contained,
                                            std::make_pair(g, g), k.size(), index}};
      }
    }
  }
  return {Tile(k, level, std::move(by_label), std::move(core)), std::nullopt};
}

Tile require_tile(const FiniteElementSet& k, std::size_t level, const SubgroupChain& chain,
                  std::optional<FiniteElementSet> core) {
  auto check = verify_tiling(k, level, chain, std::move(core));
  if (!check) throw ValidationError(check.failure->describe());
  return std::move(*check.tile);
}

NotSeparated::NotSeparated(GroupElement first, GroupElement second)
    : ValidationError("core not separated: " + first.to_string() + " and " + second.to_string() +
                      " share a coset"),
      first_(std::move(first)),
      second_(std::move(second)) {}

Tile build_transversal(const FiniteElementSet& core, std::size_t level, const SubgroupChain& chain,
                       const TransversalOptions& options) {
  if (auto collision = find_collision(core.elements(), level, chain)) {
    throw NotSeparated(collision->first, collision->second);
  }
  const std::uint64_t index = chain.index(level);
  if (index > default_size_cap) {
    throw SizeCapExceeded("level " + std::to_string(level) + " index " + std::to_string(index) +
                          " exceeds the size cap");
  }
  std::vector<std::optional<GroupElement>> slots(index);
  for (const auto& g : core) slots[chain.label(g, level)] = g;

  std::vector<GroupElement> by_label;
  std::vector<bool> pinned;
  by_label.reserve(index);
  pinned.reserve(index);
  for (Label c = 0; c < index; ++c) {
    pinned.push_back(slots[c].has_value());
    by_label.push_back(slots[c] ? std::move(*slots[c]) : chain.representative(c, level));
  }

  if (options.improvement_passes > 0) {
    std::vector<GroupElement> directions;
    for (const auto& s : chain.group().generators()) {
      // Symmetric generating sets contribute each direction once.
      if (std::find(directions.begin(), directions.end(), s.inverse()) == directions.end()) {
        directions.push_back(s);
      }
    }
    SwapImprover improver(std::move(by_label), std::move(pinned), std::move(directions),
                          chain.kernel_generators(level));
    improver.run(options.improvement_passes);
    by_label = std::move(improver).take();
  }

  std::optional<FiniteElementSet> core_copy;
  if (!core.empty()) core_copy = core;
  return require_tile(FiniteElementSet(std::move(by_label)), level, chain, std::move(core_copy));
}

FiniteElementSet tiling_centers(const Tile& big, std::size_t small_level,
                                const SubgroupChain& chain) {
  std::vector<GroupElement> out;
  for (const auto& l : big.elements()) {
    if (chain.in_subgroup(l, small_level)) out.push_back(l);
  }
  return FiniteElementSet(std::move(out));
}

Tile refine_tile(const Tile& small, const Tile& big, const SubgroupChain& chain) {
  if (small.level() > big.level()) {
    throw ValidationError("refine_tile: level order violated (" + std::to_string(small.level()) +
                          " > " + std::to_string(big.level()) + ")");
  }
  const auto centers = tiling_centers(big, small.level(), chain);
  return require_tile(product(small.elements(), centers), big.level(), chain);
}

RefinementCheck check_refinement(const Tile& small, const Tile& big, const Tile& refined,
                                 const SubgroupChain& chain) {
  RefinementCheck out;
  out.is_tile = static_cast<bool>(verify_tiling(refined.elements(), big.level(), chain));
  const std::uint64_t ratio = chain.index(big.level()) / chain.index(small.level());
  out.cardinality = refined.size() == small.size() * ratio &&
                    chain.index(big.level()) % chain.index(small.level()) == 0;

  const auto centers = tiling_centers(big, small.level(), chain);
  std::vector<GroupElement> translates;
  for (const auto& l : centers) {
    for (const auto& k : small.elements()) translates.push_back(k * l);
  }
  const std::size_t total = translates.size();
  FiniteElementSet merged(std::move(translates));
  out.partition = merged.size() == total && merged == refined.elements();

  const auto window = product(small.elements(), inverse_set(small.elements()));
  const auto diff = symmetric_difference(refined.elements(), big.elements());
  out.boundary_inclusion = std::all_of(diff.begin(), diff.end(), [&](const GroupElement& x) {
    return in_boundary(x, window, big.elements());
  });
  return out;
}

TileProvider canonical_tiles(const SubgroupChain& chain, TransversalOptions options) {
  return [chain, options](std::size_t level) {
    return build_transversal(FiniteElementSet{chain.group().identity()}, level, chain, options);
  };
}

ChainExhausted::ChainExhausted(std::size_t epsilon_index, Rational epsilon,
                               std::optional<Rational> best_defect)
    : ExhaustedError("chain exhausted at epsilon #" + std::to_string(epsilon_index + 1) + " = " +
                     to_string(epsilon) + "; best defect achieved " +
                     (best_defect ? to_string(*best_defect) : std::string("none (no level left)"))),
      epsilon_index_(epsilon_index),
      epsilon_(std::move(epsilon)),
      best_defect_(std::move(best_defect)) {}

NestedTileChain select_nested_chain(const SubgroupChain& chain, const FiniteElementSet& s,
                                    std::span<const Rational> epsilons,
                                    const TileProvider& provider, AcceptanceRule rule) {
  if (epsilons.empty()) throw ValidationError("select_nested_chain needs at least one epsilon");
  for (std::size_t k = 0; k < epsilons.size(); ++k) {
    if (epsilons[k] <= 0) throw ValidationError("epsilons must be positive");
    if (k > 0 && epsilons[k] > epsilons[k - 1]) {
      throw ValidationError("epsilons must be non-increasing");
    }
  }
  if (s.empty()) throw ValidationError("select_nested_chain needs a nonempty set S");
  chain.group().require(s[0]);

  NestedTileChain out;
  out.epsilons.assign(epsilons.begin(), epsilons.end());
  out.rule = rule;
  out.selection_set = s;

  std::size_t next_level = 1;
  for (std::size_t k = 0; k < epsilons.size(); ++k) {
    const Rational& eps = epsilons[k];
    std::optional<Rational> best;
    bool accepted = false;
    for (std::size_t n = next_level; n <= chain.depth() && !accepted; ++n) {
      Tile big = provider(n);
      if (big.level() != n) throw ValidationError("tile provider returned a tile at the wrong level");
      std::optional<Tile> candidate;
      FiniteElementSet centers;
      if (out.levels.empty()) {
        candidate = big;
      } else {
        const Tile& previous = out.levels.back().tile;
        centers = tiling_centers(big, previous.level(), chain);
        candidate = refine_tile(previous, big, chain);
      }
      const Rational defect = max_two_sided_defect(candidate->elements(), s.elements());
      if (!best || defect < *best) best = defect;

      bool ok = false;
      if (rule == AcceptanceRule::measured) {
        ok = defect < eps;
      } else {
        const Rational third = eps / 3;
        ok = max_two_sided_defect(big.elements(), s.elements()) < third;
        if (ok && !out.levels.empty()) {
          const auto drift = symmetric_difference(candidate->elements(), big.elements());
          ok = Rational(Integer(drift.size()), Integer(candidate->size())) < third;
        }
      }
      if (ok) {
        out.levels.push_back({n, std::move(*candidate), defect, std::move(centers)});
        next_level = n + 1;
        accepted = true;
      }
    }
    if (!accepted) throw ChainExhausted(k, eps, best);
  }
  return out;
}

NestedTileChain nest_all_levels(const SubgroupChain& chain, const TileProvider& provider) {
  NestedTileChain out;
  out.selection_set = FiniteElementSet(chain.group().generators());
  for (std::size_t n = 1; n <= chain.depth(); ++n) {
    Tile big = provider(n);
    FiniteElementSet centers;
    if (!out.levels.empty()) {
      const Tile& previous = out.levels.back().tile;
      centers = tiling_centers(big, previous.level(), chain);
      big = refine_tile(previous, big, chain);
    }
    Rational defect = max_two_sided_defect(big.elements(), out.selection_set.elements());
    out.levels.push_back({n, std::move(big), std::move(defect), std::move(centers)});
  }
  return out;
}

}  // namespace gbd
