#include "gbd/groups.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <unordered_map>

namespace gbd {

namespace {

std::uint64_t residue(const Integer& x, std::uint64_t modulus) {
  Integer r = x % modulus;
  if (r < 0) r += modulus;
  return static_cast<std::uint64_t>(r);
}

void require_same_group(const GroupElement& a, const GroupElement& b) {
  if (a.signature() != b.signature()) {
    throw StructuralError("group mismatch: " + a.signature().to_string() + " vs " +
                          b.signature().to_string());
  }
}

}  // namespace

std::string to_string(GroupKind kind) {
  return kind == GroupKind::lattice ? "lattice" : "heisenberg";
}

GroupKind parse_group_kind(std::string_view name) {
  if (name == "lattice") return GroupKind::lattice;
  if (name == "heisenberg") return GroupKind::heisenberg;
  throw ValidationError("unknown group kind '" + std::string(name) + "'");
}

std::string GroupSignature::to_string() const {
  return gbd::to_string(kind) + "/" + std::to_string(rank);
}

GroupElement::GroupElement(GroupKind kind, std::vector<Integer> coords)
    : kind_(kind), coords_(std::move(coords)) {
  if (kind_ == GroupKind::heisenberg && coords_.size() != 3) {
    throw StructuralError("heisenberg elements have exactly three coordinates");
  }
}

GroupElement GroupElement::lattice(std::vector<Integer> coords) {
  return {GroupKind::lattice, std::move(coords)};
}

GroupElement GroupElement::heisenberg(Integer a, Integer b, Integer c) {
  return {GroupKind::heisenberg, {std::move(a), std::move(b), std::move(c)}};
}

GroupElement GroupElement::identity(GroupSignature sig) {
  return {sig.kind, std::vector<Integer>(sig.rank, Integer(0))};
}

bool GroupElement::is_identity() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Integer& c) { return c == 0; });
}

GroupElement GroupElement::inverse() const {
  if (kind_ == GroupKind::heisenberg) {
    const auto& [a, b, c] = std::tie(coords_[0], coords_[1], coords_[2]);
    return heisenberg(-a, -b, a * b - c);
  }
  std::vector<Integer> out;
  out.reserve(coords_.size());
  for (const auto& c : coords_) out.push_back(-c);
  return lattice(std::move(out));
}

std::string GroupElement::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += ",";
    out += coords_[i].str();
  }
  return out + ")";
}

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  require_same_group(a, b);
  if (a.kind_ == GroupKind::heisenberg) {
    return GroupElement::heisenberg(a.coords_[0] + b.coords_[0], a.coords_[1] + b.coords_[1],
                                    a.coords_[2] + b.coords_[2] + a.coords_[0] * b.coords_[1]);
  }
  std::vector<Integer> out(a.coords_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coords_[i] + b.coords_[i];
  return GroupElement::lattice(std::move(out));
}

std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (auto c = a.coords_.size() <=> b.coords_.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.coords_.size(); ++i) {
    if (a.coords_[i] < b.coords_[i]) return std::strong_ordering::less;
    if (b.coords_[i] < a.coords_[i]) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::size_t GroupElementHash::operator()(const GroupElement& g) const noexcept {
  std::size_t h = static_cast<std::size_t>(g.kind()) * 0x9e3779b97f4a7c15ULL;
  for (const auto& c : g.coords()) {
    Integer magnitude = abs(c);
    auto low = static_cast<std::uint64_t>(magnitude & std::numeric_limits<std::uint64_t>::max());
    std::uint64_t v = low * 2 + (c < 0 ? 1 : 0);
    h ^= std::hash<std::uint64_t>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

GroupElement group_op(const GroupElement& a, const GroupElement& b, GroupOpMode mode) {
  require_same_group(a, b);
  return mode == GroupOpMode::multiply ? a * b : a.inverse() * b;
}

GroupDescriptor::GroupDescriptor(GroupKind kind, std::size_t rank) : sig_{kind, rank} {
  if (kind == GroupKind::heisenberg && rank != 3) {
    throw ValidationError("the heisenberg group has rank 3");
  }
  if (rank == 0) throw ValidationError("group rank must be positive");
  const std::size_t directions = kind == GroupKind::heisenberg ? 2 : rank;
  for (std::size_t i = 0; i < directions; ++i) {
    for (int sign : {1, -1}) {
      std::vector<Integer> coords(rank, Integer(0));
      coords[i] = sign;
      generators_.emplace_back(kind, std::move(coords));
    }
  }
}

GroupElement GroupDescriptor::element(std::vector<Integer> coords) const {
  if (coords.size() != sig_.rank) {
    throw StructuralError("expected " + std::to_string(sig_.rank) + " coordinates, got " +
                          std::to_string(coords.size()));
  }
  return {sig_.kind, std::move(coords)};
}

GroupElement GroupDescriptor::element(std::initializer_list<long long> coords) const {
  std::vector<Integer> out;
  for (long long c : coords) out.emplace_back(c);
  return element(std::move(out));
}

void GroupDescriptor::require(const GroupElement& g) const {
  if (!contains(g)) {
    throw StructuralError("element " + g.to_string() + " is not in group " + sig_.to_string());
  }
}

std::vector<GroupElement> word_ball(const GroupDescriptor& group, std::size_t radius) {
  std::set<GroupElement> seen{group.identity()};
  std::vector<GroupElement> frontier{group.identity()};
  for (std::size_t r = 0; r < radius; ++r) {
    std::vector<GroupElement> next;
    for (const auto& w : frontier) {
      for (const auto& s : group.generators()) {
        auto g = w * s;
        if (seen.insert(g).second) next.push_back(std::move(g));
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

SubgroupChain::SubgroupChain(GroupDescriptor group, std::vector<std::uint64_t> moduli)
    : group_(std::move(group)), moduli_(std::move(moduli)) {
  if (moduli_.empty()) throw ValidationError("subgroup chain needs at least one level");
  for (std::uint64_t m : moduli_) {
    if (m == 0) throw ValidationError("chain moduli must be positive");
    std::uint64_t index = 1;
    for (std::size_t i = 0; i < group_.rank(); ++i) {
      if (__builtin_mul_overflow(index, m, &index)) {
        throw ValidationError("index " + std::to_string(m) + "^" + std::to_string(group_.rank()) +
                              " does not fit a 64-bit label");
      }
    }
    indices_.push_back(index);
  }
}

SubgroupChain SubgroupChain::from_coordinate_moduli(
    GroupDescriptor group, const std::vector<std::vector<std::uint64_t>>& moduli) {
  std::vector<std::uint64_t> uniform;
  for (std::size_t n = 0; n < moduli.size(); ++n) {
    const auto& level = moduli[n];
    if (level.size() != group.rank()) {
      throw ValidationError("level " + std::to_string(n + 1) + " lists " +
                            std::to_string(level.size()) + " moduli for a rank-" +
                            std::to_string(group.rank()) + " group");
    }
    if (std::adjacent_find(level.begin(), level.end(), std::not_equal_to<>{}) != level.end()) {
      throw ValidationError("level " + std::to_string(n + 1) +
                            " mixes moduli across coordinates; only single-modulus congruence "
                            "kernels are supported");
    }
    uniform.push_back(level.front());
  }
  return {std::move(group), std::move(uniform)};
}

void SubgroupChain::check_level(std::size_t level) const {
  if (level < 1 || level > moduli_.size()) {
    throw LevelOutOfRange("level " + std::to_string(level) + " outside 1.." +
                          std::to_string(moduli_.size()));
  }
}

std::uint64_t SubgroupChain::modulus(std::size_t level) const {
  check_level(level);
  return moduli_[level - 1];
}

std::uint64_t SubgroupChain::index(std::size_t level) const {
  check_level(level);
  return indices_[level - 1];
}

Label SubgroupChain::label(const GroupElement& x, std::size_t level) const {
  group_.require(x);
  const std::uint64_t m = modulus(level);
  Label out = 0;
  for (const auto& c : x.coords()) out = out * m + residue(c, m);
  return out;
}

std::vector<std::uint64_t> SubgroupChain::residues(Label label, std::size_t level) const {
  const std::uint64_t m = modulus(level);
  if (label >= indices_[level - 1]) {
    throw ValidationError("label " + std::to_string(label) + " out of range at level " +
                          std::to_string(level));
  }
  std::vector<std::uint64_t> out(group_.rank());
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = label % m;
    label /= m;
  }
  return out;
}

Label SubgroupChain::encode(std::span<const std::uint64_t> residues, std::size_t level) const {
  const std::uint64_t m = modulus(level);
  Label out = 0;
  for (std::uint64_t r : residues) out = out * m + r % m;
  return out;
}

GroupElement SubgroupChain::representative(Label label, std::size_t level) const {
  auto r = residues(label, level);
  std::vector<Integer> coords(r.begin(), r.end());
  return {group_.kind(), std::move(coords)};
}

Label SubgroupChain::project(Label label, std::size_t from, std::size_t to) const {
  check_level(to);
  if (to > from) {
    throw ValidationError("projection must go to a coarser level (" + std::to_string(to) + " > " +
                          std::to_string(from) + ")");
  }
  auto r = residues(label, from);
  return encode(r, to);
}

std::vector<Label> SubgroupChain::fiber(Label label, std::size_t level, std::size_t deeper) const {
  check_level(deeper);
  if (deeper < level) throw ValidationError("fiber target level must be at least the source level");
  const auto base = residues(label, level);
  const std::uint64_t m = modulus(level);
  const std::uint64_t span = modulus(deeper) / m;
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < base.size(); ++i) count *= span;
  std::vector<Label> out;
  out.reserve(count);
  std::vector<std::uint64_t> r(base.size());
  for (std::uint64_t t = 0; t < count; ++t) {
    std::uint64_t rest = t;
    for (std::size_t i = r.size(); i-- > 0;) {
      r[i] = base[i] + m * (rest % span);
      rest /= span;
    }
    out.push_back(encode(r, deeper));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Label SubgroupChain::act(const GroupElement& g, Label label, std::size_t level) const {
  return this->label(g * representative(label, level), level);
}

std::vector<GroupElement> SubgroupChain::kernel_generators(std::size_t level) const {
  const std::uint64_t m = modulus(level);
  std::vector<GroupElement> out;
  for (std::size_t i = 0; i < group_.rank(); ++i) {
    for (int sign : {1, -1}) {
      std::vector<Integer> coords(group_.rank(), Integer(0));
      coords[i] = Integer(m) * sign;
      out.emplace_back(group_.kind(), std::move(coords));
    }
  }
  return out;
}

ChainDiagnostics check_chain(const SubgroupChain& chain, std::size_t probe_radius) {
  ChainDiagnostics diag;
  const auto& moduli = chain.moduli();
  for (std::size_t n = 0; n + 1 < moduli.size(); ++n) {
    if (moduli[n + 1] % moduli[n] != 0) {
      diag.nestedness = {false, "m_" + std::to_string(n + 1) + "=" + std::to_string(moduli[n]) +
                                    " does not divide m_" + std::to_string(n + 2) + "=" +
                                    std::to_string(moduli[n + 1])};
      break;
    }
  }

  const auto probes = word_ball(chain.group(), probe_radius);
  diag.probes = probes.size();
  auto fail = [](PropertyCheck& check, std::string witness) {
    if (check.passed) check = {false, std::move(witness)};
  };

  for (std::size_t n = 1; n <= chain.depth(); ++n) {
    const std::string at = " at level " + std::to_string(n);

    std::vector<GroupElement> kernel;
    for (const auto& x : probes) {
      if (chain.in_subgroup(x, n)) kernel.push_back(x);
    }
    for (auto& k : chain.kernel_generators(n)) kernel.push_back(std::move(k));
    for (const auto& g : probes) {
      const auto g_inv = g.inverse();
      for (const auto& x : kernel) {
        if (!chain.in_subgroup(g * x * g_inv, n)) {
          fail(diag.normality, "g=" + g.to_string() + " x=" + x.to_string() + at);
        }
      }
    }

    std::vector<Label> labels;
    std::vector<GroupElement> reps;
    for (const auto& x : probes) {
      labels.push_back(chain.label(x, n));
      reps.push_back(chain.representative(labels.back(), n));
    }
    for (std::size_t i = 0; i < probes.size() && diag.homomorphism.passed; ++i) {
      for (std::size_t j = 0; j < probes.size(); ++j) {
        if (chain.label(probes[i] * probes[j], n) != chain.label(reps[i] * reps[j], n)) {
          fail(diag.homomorphism,
               "x=" + probes[i].to_string() + " y=" + probes[j].to_string() + at);
          break;
        }
      }
    }

    for (std::size_t deeper = n + 1; deeper <= chain.depth(); ++deeper) {
      for (const auto& x : probes) {
        if (chain.project(chain.label(x, deeper), deeper, n) != chain.label(x, n)) {
          fail(diag.compatibility, "x=" + x.to_string() + " between levels " + std::to_string(n) +
                                       " and " + std::to_string(deeper));
          break;
        }
      }
    }

    // Exhaustive up to 2^20 labels, strided beyond.
    const std::uint64_t index = chain.index(n);
    const std::uint64_t stride = index <= (1u << 20) ? 1 : index / (1u << 20);
    for (Label c = 0; c < index; c += stride) {
      if (chain.label(chain.representative(c, n), n) != c) {
        fail(diag.surjectivity, "label " + std::to_string(c) + " not hit" + at);
        break;
      }
    }
  }
  return diag;
}

ChainDepthInsufficient::ChainDepthInsufficient(GroupElement first, GroupElement second)
    : ExhaustedError("chain depth insufficient: " + first.to_string() + " and " +
                     second.to_string() + " share a label at every level"),
      first_(std::move(first)),
      second_(std::move(second)) {}

std::optional<std::pair<GroupElement, GroupElement>> find_collision(
    std::span<const GroupElement> elements, std::size_t level, const SubgroupChain& chain) {
  std::unordered_map<Label, std::size_t> seen;
  seen.reserve(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    auto [it, inserted] = seen.emplace(chain.label(elements[i], level), i);
    if (!inserted) return std::make_pair(elements[it->second], elements[i]);
  }
  return std::nullopt;
}

std::size_t check_separation(std::span<const GroupElement> elements, const SubgroupChain& chain) {
  if (elements.empty()) throw ValidationError("check_separation needs a nonempty set");
  std::optional<std::pair<GroupElement, GroupElement>> last;
  for (std::size_t n = 1; n <= chain.depth(); ++n) {
    last = find_collision(elements, n, chain);
    if (!last) return n;
  }
  throw ChainDepthInsufficient(last->first, last->second);
}

}  // namespace gbd
