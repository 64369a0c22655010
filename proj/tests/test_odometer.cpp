#include "support.hpp"

#include <gtest/gtest.h>

using namespace gbd;
using support::Gen;
using support::q;
using support::to_element;
using support::to_oracle;
using support::to_set;

namespace {

const GroupDescriptor Z = GroupDescriptor::lattice(1);
const GroupDescriptor Z2 = GroupDescriptor::lattice(2);
const GroupDescriptor H = GroupDescriptor::heisenberg();

}  // namespace

TEST(EmbedPoint, Examples) {
  const SubgroupChain z(Z, {2, 4, 8});
  EXPECT_EQ(embed_point(Z.element({5}), 3, z).labels(), (std::vector<Label>{1, 1, 5}));
  EXPECT_EQ(embed_point(Z.identity(), 3, z).labels(), (std::vector<Label>{0, 0, 0}));
  const SubgroupChain h(H, {2, 4});
  const auto p = embed_point(H.element({1, 2, 3}), 2, h);
  EXPECT_EQ(p.label(1), h.label(H.element({1, 0, 1}), 1));
  EXPECT_EQ(p.label(2), h.label(H.element({1, 2, 3}), 2));
  EXPECT_TRUE(is_coherent(p, h));
}

TEST(CoherentPoint, IncoherentRejected) {
  const SubgroupChain z(Z, {2, 4});
  EXPECT_THROW(make_point({0, 1}, z), ValidationError);
  EXPECT_NO_THROW(make_point({1, 3}, z));
}

TEST(Act, Examples) {
  const SubgroupChain z(Z, {2, 4, 8});
  const auto p = embed_point(Z.element({5}), 3, z);
  EXPECT_EQ(act(Z.element({3}), p, z).labels(), (std::vector<Label>{0, 0, 0}));
  EXPECT_EQ(act(Z.identity(), p, z), p);

  const SubgroupChain h(H, {2});
  const Cylinder c{1, h.label(H.element({1, 1, 1}), 1)};
  EXPECT_EQ(act(H.element({1, 0, 0}), c, h), (Cylinder{1, h.label(H.element({0, 1, 0}), 1)}));
}

TEST(Act, LeftActionAndBijectivity) {
  Gen gen(41);
  for (const auto& g : {Z, Z2, H}) {
    const SubgroupChain chain(g, {2, 4});
    for (int trial = 0; trial < 50; ++trial) {
      const auto a = to_element(g, gen.vec(g.rank(), 9));
      const auto b = to_element(g, gen.vec(g.rank(), 9));
      const auto x = embed_point(to_element(g, gen.vec(g.rank(), 9)), 2, chain);
      EXPECT_EQ(act(a, act(b, x, chain), chain), act(a * b, x, chain));
      std::vector<bool> hit(chain.index(2), false);
      for (Label c = 0; c < chain.index(2); ++c) hit[chain.act(a, c, 2)] = true;
      EXPECT_TRUE(std::all_of(hit.begin(), hit.end(), [](bool v) { return v; }));
    }
  }
}

TEST(Act, KernelElementsFixLevelCylinders) {
  for (const auto& g : {Z, Z2, H}) {
    const SubgroupChain chain(g, {2, 4});
    for (std::size_t n = 1; n <= 2; ++n) {
      for (const auto& l : chain.kernel_generators(n)) {
        for (Label c = 0; c < chain.index(n); ++c) EXPECT_EQ(chain.act(l, c, n), c);
      }
    }
  }
}

TEST(Minimality, TileOrbitMeetsEachCylinderOnce) {
  for (const auto& g : {Z, Z2, H}) {
    const SubgroupChain chain(g, {2, 4});
    const auto tile = canonical_tiles(chain)(2);
    const auto x0 = embed_point(to_element(g, oracle::Vec(g.rank(), 3)), 2, chain);
    std::vector<int> hits(chain.index(2), 0);
    for (const auto& k : tile.elements()) ++hits[act(k, x0, chain).label(2)];
    EXPECT_TRUE(std::all_of(hits.begin(), hits.end(), [](int v) { return v == 1; }));
  }
}

TEST(DecomposeClopen, Examples) {
  const SubgroupChain z(Z, {2, 4});
  const std::vector<Cylinder> mixed{{1, 0}, {2, 1}};
  EXPECT_EQ(decompose_clopen(mixed, z), ClopenSet(2, {0, 1, 2}));
  const std::vector<Cylinder> single{{2, 3}};
  EXPECT_EQ(decompose_clopen(single, z), ClopenSet(2, {3}));
  const std::vector<Cylinder> full{{1, 0}, {1, 1}};
  const auto all = decompose_clopen(full, z);
  EXPECT_EQ(haar_mass(all, z), 1);
}

TEST(DecomposeClopen, PreservesHaarMass) {
  Gen gen(42);
  const SubgroupChain chain(Z2, {2, 4, 8});
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Cylinder> cyls;
    const std::size_t n = 1 + gen.index(4);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t level = 1 + gen.index(3);
      cyls.push_back({level, gen.index(chain.index(level))});
    }
    const auto normal = decompose_clopen(cyls, chain);
    // Brute-force mass: fraction of deepest-level labels covered by some cylinder.
    std::size_t covered = 0;
    for (Label c = 0; c < chain.index(3); ++c) {
      for (const auto& cyl : cyls) {
        if (chain.project(c, 3, cyl.level) == cyl.label) {
          ++covered;
          break;
        }
      }
    }
    EXPECT_EQ(haar_mass(refine_to(normal, 3, chain), chain),
              q(static_cast<long long>(covered), static_cast<long long>(chain.index(3))));
  }
}

TEST(ClopenSet, CoarsenAndSetOperations) {
  const SubgroupChain z(Z, {2, 4});
  EXPECT_EQ(coarsen_to(ClopenSet(2, {0, 2}), 1, z), std::optional<ClopenSet>(ClopenSet(1, {0})));
  EXPECT_FALSE(coarsen_to(ClopenSet(2, {0}), 1, z));
  EXPECT_TRUE(clopen_equal(ClopenSet(1, {1}), ClopenSet(2, {1, 3}), z));
  EXPECT_TRUE(clopen_disjoint(ClopenSet(1, {1}), ClopenSet(2, {0, 2}), z));
  EXPECT_EQ(clopen_union(ClopenSet(1, {1}), ClopenSet(2, {0}), z), ClopenSet(2, {0, 1, 3}));
  EXPECT_EQ(clopen_intersection(ClopenSet(1, {1}), ClopenSet(2, {0, 1}), z), ClopenSet(2, {1}));
  EXPECT_TRUE(contains(ClopenSet(2, {1}), embed_point(Z.element({5}), 2, z)));
}

TEST(PeriodicityWindow, Examples) {
  const SubgroupChain z(Z, {4});
  const auto k = require_tile(to_set(Z, oracle::box(1, 0, 3)), 1, z);
  EXPECT_EQ(periodicity_window(1, k, k.elements(), z),
            (FiniteElementSet{Z.element({0}), Z.element({4})}));
  EXPECT_EQ(periodicity_window(1, k, FiniteElementSet{Z.identity()}, z),
            FiniteElementSet{Z.identity()});
  const SubgroupChain z2(Z2, {2});
  const auto k2 = require_tile(to_set(Z2, oracle::box(2, 0, 1)), 1, z2);
  const auto w = periodicity_window(1, k2, k2.elements(), z2);
  EXPECT_EQ(w.size(), 4u);
  EXPECT_EQ(to_oracle(w), oracle::periodicity_window(false, to_oracle(k2.elements()),
                                                     to_oracle(k2.elements()), 2));
}

TEST(PeriodicityWindow, RequiresFInsideK) {
  const SubgroupChain z(Z, {4});
  const auto k = require_tile(to_set(Z, oracle::box(1, 0, 3)), 1, z);
  EXPECT_THROW(periodicity_window(1, k, FiniteElementSet{Z.element({7})}, z), ValidationError);
  EXPECT_THROW(periodicity_window(1, k, k.elements(), z, 10), SizeCapExceeded);
}

TEST(PeriodicityWindow, HeisenbergAgainstOracle) {
  const SubgroupChain h(H, {2});
  const auto k = canonical_tiles(h)(1);
  const auto w = periodicity_window(1, k, k.elements(), h);
  EXPECT_EQ(to_oracle(w),
            oracle::periodicity_window(true, to_oracle(k.elements()), to_oracle(k.elements()), 2));
}

TEST(AlmostPeriodicity, Examples) {
  const SubgroupChain z(Z, {2, 4, 8});
  const auto f = std::vector<Rational>{0, 1, 0, 0};
  EXPECT_EQ(almost_periodicity_defect(f, 2, Z.element({4}), z), 0);
  EXPECT_EQ(almost_periodicity_defect(f, 2, Z.element({2}), z), 1);
  const auto constant = std::vector<Rational>(4, q(1, 3));
  EXPECT_EQ(almost_periodicity_defect(constant, 2, Z.element({1}), z), 0);
}

TEST(OdometerOrbit, CarriesForZ) {
  const SubgroupChain z(Z, {2, 4, 8});
  const auto orbit = odometer_orbit(Z.element({1}), 8, 3, z);
  ASSERT_EQ(orbit.size(), 9u);
  EXPECT_EQ(orbit[3].labels(), (std::vector<Label>{1, 3, 3}));
  EXPECT_EQ(orbit[4].labels(), (std::vector<Label>{0, 0, 4}));
  EXPECT_EQ(orbit[8].labels(), (std::vector<Label>{0, 0, 0}));
}
