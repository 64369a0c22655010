// Acceptance suite: one PASS/FAIL line per criterion.

#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

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

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& what) {
    if (!condition && passed) detail << "first violation: " << what;
    passed = passed && condition;
  }
};

std::vector<std::uint64_t> dyadic(std::size_t levels) {
  std::vector<std::uint64_t> out;
  for (std::size_t n = 1; n <= levels; ++n) out.push_back(std::uint64_t{1} << n);
  return out;
}

void ac1(Outcome& o) {
  for (std::size_t d : {1, 2}) {
    const SubgroupChain chain(GroupDescriptor::lattice(d), dyadic(16 / d));
    for (std::size_t n = 1; n <= chain.depth(); ++n) {
      const long long m = static_cast<long long>(chain.modulus(n));
      const auto box = to_set(chain.group(), oracle::box(d, 0, m - 1));
      o.require(static_cast<bool>(verify_tiling(box, n, chain)),
                "Z^" + std::to_string(d) + " box at level " + std::to_string(n));
    }
  }
}

void ac2(Outcome& o) {
  for (long long qq = 2; qq <= 1024; qq *= 2) {
    const auto k = to_set(Z, oracle::box(1, 0, qq - 1));
    o.require(folner_defect(k, Z.element({1}), Side::right) == q(2, qq), "right defect 2/q");
    o.require(folner_defect(k, Z.element({1}), Side::left) == q(2, qq), "left defect 2/q");
  }
  const auto cube = oracle::box(3, 0, 3);
  const auto k = to_set(H, cube);
  const auto a = folner_defect(k, H.element({1, 0, 0}), Side::right);
  const auto b = folner_defect(k, H.element({0, 1, 0}), Side::right);
  o.require(a == q(1, 2), "H cube right (1,0,0) = 1/2, got " + to_string(a));
  o.require(b == q(17, 16), "H cube right (0,1,0) = 17/16, got " + to_string(b));
  o.require(a == support::to_rational(oracle::right_defect(true, cube, {1, 0, 0})), "oracle (1,0,0)");
  o.require(b == support::to_rational(oracle::right_defect(true, cube, {0, 1, 0})), "oracle (0,1,0)");
}

void ac3(Outcome& o) {
  Gen gen(1003);
  const std::vector<SubgroupChain> chains{SubgroupChain(Z, {4, 16}), SubgroupChain(Z, {2, 8}),
                                          SubgroupChain(Z2, {2, 4}), SubgroupChain(Z2, {2, 8})};
  for (int trial = 0; trial < 200; ++trial) {
    const auto& chain = chains[trial % chains.size()];
    const auto& g = chain.group();
    const long long m1 = static_cast<long long>(chain.modulus(1));
    const long long m2 = static_cast<long long>(chain.modulus(2));
    const auto small_o = gen.transversal(g.rank(), m1, 3, true);
    const auto big_o = gen.transversal(g.rank(), m2, 3);
    const auto small = require_tile(to_set(g, small_o), 1, chain);
    const auto big = require_tile(to_set(g, big_o), 2, chain);
    const auto refined = refine_tile(small, big, chain);
    const auto check = check_refinement(small, big, refined, chain);
    const std::string id = "trial " + std::to_string(trial);
    o.require(static_cast<bool>(verify_tiling(refined.elements(), 2, chain)), id + ": not a tile");
    o.require(refined.size() == small.size() * chain.index(2) / chain.index(1), id + ": cardinality");
    o.require(check.partition, id + ": partition");
    o.require(to_oracle(refined.elements()) == oracle::refine(false, small_o, big_o, m1), id + ": oracle");
    const auto delta = symmetric_difference(refined.elements(), big.elements());
    const auto kk = product(small.elements(), inverse_set(small.elements()));
    o.require(is_subset(delta, s_boundary(kk, big.elements())) && check.boundary_inclusion,
              id + ": boundary inclusion");
  }
}

void ac4(Outcome& o) {
  Gen gen(1004);
  for (int trial = 0; trial < 500; ++trial) {
    const auto& g = trial % 2 ? H : (trial % 4 ? Z2 : Z);
    const bool h = support::heis(g);
    const auto s_o = gen.set(g.rank(), 5, 2);
    const auto k_o = gen.set(g.rank(), 30, 3);
    const auto s = to_set(g, s_o);
    const auto k = to_set(g, k_o);
    const auto boundary = s_boundary(s, k);
    const auto interior = translate_intersection(s, k);
    const bool ok = are_disjoint(boundary, interior) && set_union(boundary, interior) == product(s, k) &&
                    to_oracle(boundary) == oracle::s_boundary(h, s_o, k_o) &&
                    to_oracle(interior) == oracle::intersect_translates(h, s_o, k_o);
    o.require(ok, "instance " + std::to_string(trial));
  }
}

void ac5(Outcome& o) {
  const SubgroupChain z(Z, {2, 4, 8});
  const auto zn = nest_all_levels(z, canonical_tiles(z));
  const CompactGroupoidSet c({{ClopenSet(3, {7}), Z.element({1})}}, z);
  const auto cert = almost_af_certificate(c, 3, zn, z);
  bool ranges = cert.graphs.size() == 3;
  for (std::size_t i = 0; ranges && i < 3; ++i) ranges = cert.graphs[i].range(z) == ClopenSet(3, {i});
  o.require(cert.level == 3 && cert.k == FiniteElementSet{Z.element({7})} && ranges,
            "worked instance");

  Gen gen(1005);
  const std::vector<SubgroupChain> chains{SubgroupChain(Z, dyadic(7)), SubgroupChain(Z2, dyadic(4)),
                                          SubgroupChain(H, dyadic(3))};
  std::vector<NestedTileChain> nested;
  for (const auto& chain : chains) nested.push_back(nest_all_levels(chain, canonical_tiles(chain)));
  std::size_t emitted = 0;
  for (std::size_t attempt = 0; emitted < 100 && attempt < 5000; ++attempt) {
    const std::size_t f = attempt % chains.size();
    const auto instance = support::random_certificate_instance(gen, nested[f], chains[f]);
    if (!instance) continue;
    const auto cert = almost_af_certificate(instance->set, instance->m, nested[f], chains[f]);
    ++emitted;
    const auto& v = cert.validation;
    o.require(v.sources_equal && v.ranges_disjoint && v.graphs && v.inside_Gn,
              "random certificate " + std::to_string(emitted));
    o.require(v.inequality_chain && cert.bounds.holds() && cert.k.size() * instance->m < cert.tile.size(),
              "inequality chain " + std::to_string(emitted));
  }
  o.require(emitted == 100, "only " + std::to_string(emitted) + " random instances generated");
  o.detail << (o.passed ? "" : "; ") << emitted << " random certificates";
}

void ac6(Outcome& o) {
  const SubgroupChain z(Z, {4, 16});
  const auto rz = verify_nesting(require_tile(to_set(Z, oracle::box(1, 0, 3)), 1, z),
                                 require_tile(to_set(Z, oracle::box(1, 0, 15)), 2, z), z);
  const SubgroupChain z2(Z2, {2, 4});
  const auto rz2 = verify_nesting(require_tile(to_set(Z2, oracle::box(2, 0, 1)), 1, z2),
                                  require_tile(to_set(Z2, oracle::box(2, 0, 3)), 2, z2), z2);
  o.require(rz.passed, "Z levels (4,16)");
  o.require(rz2.passed, "Z^2 levels (2,4)");
  o.detail << (o.passed ? "" : "; ") << rz.arrows_checked + rz2.arrows_checked << " arrows";
}

void ac7(Outcome& o) {
  const std::vector<SubgroupChain> chains{SubgroupChain(Z, dyadic(8)), SubgroupChain(Z2, dyadic(4)),
                                          SubgroupChain(H, dyadic(2))};
  for (const auto& chain : chains) {
    for (std::size_t n = 1; n <= chain.depth(); ++n) {
      const auto s = solve_invariant_measure(n, chain.group().generators(), chain);
      o.require(s.unique && s.classes.size() == 1 && s.measure == LevelMeasure::haar(n, chain) &&
                    s.trace.size() == chain.index(n),
                chain.group().signature().to_string() + " level " + std::to_string(n));
    }
  }
  Gen gen(1007);
  for (int trial = 0; trial < 100; ++trial) {
    const auto& chain = chains[trial % chains.size()];
    const auto& g = chain.group();
    const std::size_t level = 1 + gen.index(2);
    std::vector<WeightedPatch> f;
    for (std::size_t i = 0, n = 1 + gen.index(5); i < n; ++i) {
      const std::size_t at = 1 + gen.index(level);
      std::vector<Label> labels;
      for (std::size_t j = 0, c = 1 + gen.index(3); j < c; ++j) labels.push_back(gen.index(chain.index(at)));
      f.push_back({{ClopenSet(at, labels), to_element(g, gen.vec(g.rank(), 6))},
                   q(gen.integer(-9, 9), gen.integer(1, 9))});
    }
    o.require(invariance_defect(f, LevelMeasure::haar(level, chain), chain) == 0,
              "weighted set " + std::to_string(trial));
  }
}

void ac8(Outcome& o) {
  Gen gen(1008);
  for (const auto& chain : {SubgroupChain(Z, {2, 4, 8}), SubgroupChain(Z2, {2, 4}), SubgroupChain(H, {2, 4})}) {
    const auto& g = chain.group();
    for (std::size_t n = 1; n <= chain.depth(); ++n) {
      const auto tile = canonical_tiles(chain)(n);
      // Tile multiples: K·C for a few distinct kernel elements C.
      std::vector<GroupElement> centers{g.identity()};
      for (const auto& l : chain.kernel_generators(n)) centers.push_back(l * to_element(g, gen.vec(g.rank(), 1)));
      std::vector<GroupElement> kernel;
      for (const auto& c : centers) {
        if (chain.in_subgroup(c, n)) kernel.push_back(c);
      }
      const auto window = product(tile.elements(), FiniteElementSet(kernel));
      const auto x0 = embed_point(to_element(g, gen.vec(g.rank(), 5)), chain.depth(), chain);
      for (Label c = 0; c < chain.index(n); ++c) {
        const ClopenSet cyl(n, {c});
        const auto f = indicator(cyl, chain);
        o.require(birkhoff_average(f, n, window, x0, chain) == haar_mass(cyl, chain),
                  g.signature().to_string() + " level " + std::to_string(n) + " label " + std::to_string(c));
      }
    }
  }
  const SubgroupChain z(Z, dyadic(5));
  for (std::size_t n = 1; n <= z.depth(); ++n) {
    const auto qn = static_cast<long long>(z.modulus(n));
    for (long long t = 1; t <= 100; ++t) {
      const long long start = gen.integer(-50, 50);
      const auto window = to_set(Z, oracle::box(1, start, start + t - 1));
      const auto x0 = embed_point(Z.identity(), n, z);
      for (Label c = 0; c < z.index(n); ++c) {
        const ClopenSet cyl(n, {c});
        const auto dev = abs(birkhoff_average(indicator(cyl, z), n, window, x0, z) - haar_mass(cyl, z));
        o.require(dev <= q(qn, t), "interval window T=" + std::to_string(t));
      }
    }
  }
}

void ac9(Outcome& o) {
  const SubgroupChain z(Z, {4});
  const auto k = require_tile(to_set(Z, oracle::box(1, 0, 3)), 1, z);
  o.require(periodicity_window(1, k, k.elements(), z) == FiniteElementSet{Z.element({0}), Z.element({4})},
            "window {0,4}");
  Gen gen(1009);
  for (const auto& chain : {SubgroupChain(Z, {2, 4, 8}), SubgroupChain(Z2, {2, 4}), SubgroupChain(H, {2, 4})}) {
    const auto& g = chain.group();
    for (std::size_t n = 1; n <= chain.depth(); ++n) {
      const auto m = static_cast<long long>(chain.modulus(n));
      std::vector<GroupElement> ls = chain.kernel_generators(n);
      for (int i = 0; i < 10; ++i) {
        auto v = gen.vec(g.rank(), 3);
        for (auto& c : v) c *= m;
        ls.push_back(to_element(g, v));
      }
      for (const auto& l : ls) {
        for (Label c = 0; c < chain.index(n); ++c) {
          const auto f = indicator(ClopenSet(n, {c}), chain);
          o.require(almost_periodicity_defect(f, n, l, chain) == 0,
                    g.signature().to_string() + " l=" + l.to_string());
        }
      }
    }
  }
}

void ac10(Outcome& o) {
  const SubgroupChain chain(Z, dyadic(6));
  auto emit = [&] {
    return emit_report(af_chain_report(nest_all_levels(chain, canonical_tiles(chain)), chain), Format::json);
  };
  const auto first = emit();
  const auto second = emit();
  const auto r = parse_af_chain_report(first);
  o.require(r.multiplicities == std::vector<std::uint64_t>(5, 2), "multiplicities all 2");
  o.require(r.supernatural && *r.supernatural == std::vector<SupernaturalFactor>{{2, std::nullopt}},
            "supernatural 2^inf");
  o.require(first == second, "byte-stable emission");
}

struct Criterion {
  const char* id;
  const char* name;
  double budget_seconds;  // 0 = no time bound
  std::function<void(Outcome&)> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"AC1", "tiling exactness, Z and Z^2 boxes to index 2^16", 5, ac1},
      {"AC2", "Folner defect formulas", 0, ac2},
      {"AC3", "refinement on 200 random tile pairs", 30, ac3},
      {"AC4", "boundary decomposition on 500 instances", 0, ac4},
      {"AC5", "almost-AF certificates", 60, ac5},
      {"AC6", "nesting by exhaustive arrow enumeration", 0, ac6},
      {"AC7", "unique invariant measure", 0, ac7},
      {"AC8", "Birkhoff averages versus Haar mass", 0, ac8},
      {"AC9", "almost periodicity", 0, ac9},
      {"AC10", "classical cross-check and byte stability", 0, ac10},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0 && secs >= c.budget_seconds) {
      o.require(false, "time budget " + std::to_string(c.budget_seconds) + " s exceeded");
    }
    failures += o.passed ? 0 : 1;
    std::printf("%-4s %s  %s  (%.3f s)%s%s\n", c.id, o.passed ? "PASS" : "FAIL", c.name, secs,
                o.detail.str().empty() ? "" : "  ", o.detail.str().c_str());
  }
  return failures == 0 ? 0 : 1;
}
