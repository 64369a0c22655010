#pragma once

#include "gbd/report.hpp"
#include "oracles.hpp"

#include <random>

namespace support {

using gbd::FiniteElementSet;
using gbd::GroupDescriptor;
using gbd::GroupElement;
using gbd::Integer;
using gbd::Rational;

inline GroupElement to_element(const GroupDescriptor& g, const oracle::Vec& v) {
  std::vector<Integer> coords(v.begin(), v.end());
  return g.element(std::move(coords));
}

inline oracle::Vec to_vec(const GroupElement& g) {
  oracle::Vec out;
  for (const auto& c : g.coords()) out.push_back(static_cast<long long>(c));
  return out;
}

inline FiniteElementSet to_set(const GroupDescriptor& g, const oracle::Set& s) {
  std::vector<GroupElement> out;
  for (const auto& v : s) out.push_back(to_element(g, v));
  return FiniteElementSet(std::move(out));
}

inline oracle::Set to_oracle(const FiniteElementSet& s) {
  oracle::Set out;
  for (const auto& g : s) out.insert(to_vec(g));
  return out;
}

inline Rational to_rational(oracle::Frac f) { return gbd::make_rational(f.num, f.den); }

inline Rational q(long long p, long long d) { return gbd::make_rational(p, d); }

inline bool heis(const GroupDescriptor& g) { return g.kind() == gbd::GroupKind::heisenberg; }

// Hand-rolled generators for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long long integer(long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng_);
  }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  oracle::Vec vec(std::size_t dim, long long radius) {
    oracle::Vec out(dim);
    for (auto& c : out) c = integer(-radius, radius);
    return out;
  }

  oracle::Set set(std::size_t dim, std::size_t max_size, long long radius) {
    oracle::Set out;
    const auto ball = oracle::ipow(static_cast<std::uint64_t>(2 * radius + 1), dim);
    const std::size_t n = 1 + index(std::min<std::size_t>(max_size, ball));
    while (out.size() < n) out.insert(vec(dim, radius));
    return out;
  }

  // A random transversal for residues mod m: each class gets its canonical
  // representative shifted by a random multiple of m. keep_identity leaves 0 in place.
  oracle::Set transversal(std::size_t dim, long long m, long long spread, bool keep_identity = false) {
    oracle::Set out;
    for (const auto& r : oracle::box(dim, 0, m - 1)) {
      oracle::Vec x = r;
      const bool pinned = keep_identity && oracle::in_kernel(x, m);
      for (auto& c : x) c += pinned ? 0 : m * integer(-spread, spread);
      out.insert(x);
    }
    return out;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline GroupDescriptor random_family(Gen& gen) {
  switch (gen.index(3)) {
    case 0: return GroupDescriptor::lattice(1);
    case 1: return GroupDescriptor::lattice(2);
    default: return GroupDescriptor::heisenberg();
  }
}

}  // namespace support

namespace support {

struct CertificateInstance {
  gbd::CompactGroupoidSet set;
  std::uint64_t m = 1;
  std::size_t level = 0;
};

// Random compact set outside G_n at the level the certificate will select:
// movers near the identity, bases on cylinders whose tile representative g
// has s·g outside the tile. Returns nullopt when no level fits the movers.
inline std::optional<CertificateInstance> random_certificate_instance(
    Gen& gen, const gbd::NestedTileChain& nested, const gbd::SubgroupChain& chain) {
  const auto& group = chain.group();
  std::vector<GroupElement> movers;
  const std::size_t count = 1 + gen.index(2);
  while (movers.size() < count) {
    auto s = to_element(group, gen.vec(group.rank(), 1));
    if (!s.is_identity()) movers.push_back(std::move(s));
  }
  const FiniteElementSet mover_set(movers);
  const std::uint64_t m = 1 + gen.index(3);
  const auto index = gbd::certificate_level(mover_set, m, nested);
  if (!index) return std::nullopt;
  const auto& tile = nested.levels[*index].tile;
  const std::size_t level = tile.level();
  std::vector<gbd::ArrowPatch> patches;
  for (const auto& s : mover_set) {
    std::vector<gbd::Label> labels;
    for (gbd::Label c = 0; c < chain.index(level); ++c) {
      if (!tile.contains(s * tile.element_with_label(c)) && (labels.empty() || gen.coin())) {
        labels.push_back(c);
      }
    }
    // Every mover needs a patch, or the certificate would pick a different level.
    if (labels.empty()) return std::nullopt;
    patches.push_back({gbd::ClopenSet(level, std::move(labels)), s});
  }
  return CertificateInstance{gbd::CompactGroupoidSet(std::move(patches), chain), m, level};
}

}  // namespace support
