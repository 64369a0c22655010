#include "gbd/config.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace gbd;
using support::q;

namespace {

const GroupDescriptor Z = GroupDescriptor::lattice(1);
const GroupDescriptor Z2 = GroupDescriptor::lattice(2);
const GroupDescriptor H = GroupDescriptor::heisenberg();

AFChainReport report_for(const SubgroupChain& chain) {
  return af_chain_report(nest_all_levels(chain, canonical_tiles(chain)), chain);
}

}  // namespace

TEST(AFChainReport, ClassicalDyadicChain) {
  const auto r = report_for(SubgroupChain(Z, {2, 4, 8, 16}));
  EXPECT_EQ(r.multiplicities, (std::vector<std::uint64_t>{2, 2, 2}));
  ASSERT_TRUE(r.supernatural);
  EXPECT_EQ(*r.supernatural, (std::vector<SupernaturalFactor>{{2, std::nullopt}}));
  for (const auto& lv : r.levels) {
    EXPECT_EQ(lv.tile_size, lv.index);
    for (const auto& d : lv.defects) EXPECT_EQ(d.right, q(2, static_cast<long long>(lv.index)));
  }
}

TEST(AFChainReport, MixedPrimesKeepFiniteExponents) {
  const auto r = report_for(SubgroupChain(Z, {3, 6, 12}));
  EXPECT_EQ(r.multiplicities, (std::vector<std::uint64_t>{2, 2}));
  EXPECT_EQ(*r.supernatural, (std::vector<SupernaturalFactor>{{2, std::nullopt}, {3, 1}}));
}

TEST(AFChainReport, HigherRankSizes) {
  const auto r2 = report_for(SubgroupChain(Z2, {2, 4}));
  EXPECT_EQ(r2.levels[0].tile_size, 4u);
  EXPECT_EQ(r2.levels[1].tile_size, 16u);
  EXPECT_EQ(r2.multiplicities, (std::vector<std::uint64_t>{4}));
  EXPECT_FALSE(r2.supernatural);
  const auto rh = report_for(SubgroupChain(H, {2, 4}));
  EXPECT_EQ(rh.levels[1].tile_size, 64u);
  EXPECT_EQ(rh.multiplicities, (std::vector<std::uint64_t>{8}));
}

TEST(Factorize, SmallValues) {
  using F = std::vector<std::pair<std::uint64_t, std::uint64_t>>;
  EXPECT_EQ(factorize(1), F{});
  EXPECT_EQ(factorize(360), (F{{2, 3}, {3, 2}, {5, 1}}));
  EXPECT_EQ(factorize(97), (F{{97, 1}}));
  EXPECT_THROW(factorize(0), ValidationError);
}

TEST(Emission, JsonSchemaAndSortedKeys) {
  const auto text = emit_report(report_for(SubgroupChain(Z, {2, 4})), Format::json);
  const auto j = nlohmann::json::parse(text);
  for (const char* key : {"group", "levels", "multiplicities", "supernatural"}) EXPECT_TRUE(j.contains(key));
  EXPECT_EQ(j["levels"][0]["defects"][0]["left"], "1/1");
  EXPECT_LT(text.find("\"chain\""), text.find("\"epsilons\""));
  EXPECT_LT(text.find("\"multiplicities\""), text.find("\"selection\""));
}

TEST(Emission, ByteStable) {
  const SubgroupChain chain(H, {2, 4});
  EXPECT_EQ(emit_report(report_for(chain), Format::json), emit_report(report_for(chain), Format::json));
  EXPECT_EQ(emit_report(report_for(chain), Format::text), emit_report(report_for(chain), Format::text));
}

TEST(RoundTrip, AFChainReport) {
  for (const auto& chain : {SubgroupChain(Z, {2, 4, 8}), SubgroupChain(H, {2, 4})}) {
    const auto r = report_for(chain);
    EXPECT_EQ(parse_af_chain_report(emit_report(r, Format::json)), r);
  }
}

TEST(RoundTrip, GraphCertificate) {
  const SubgroupChain chain(Z, {2, 4, 8});
  const auto nested = nest_all_levels(chain, canonical_tiles(chain));
  const CompactGroupoidSet c({{ClopenSet(3, {7}), Z.element({1})}}, chain);
  const auto cert = almost_af_certificate(c, 3, nested, chain);
  const auto text = emit_report(cert, Format::json);
  EXPECT_EQ(parse_graph_certificate(text), cert);
  const auto j = nlohmann::json::parse(text);
  EXPECT_EQ(j["K"], nlohmann::json::parse("[[7]]"));
  for (const auto& [key, value] : j["validation"].items()) EXPECT_TRUE(value.get<bool>()) << key;
}

TEST(RoundTrip, MeasureReport) {
  const SubgroupChain chain(Z2, {2, 4});
  const auto nested = nest_all_levels(chain, canonical_tiles(chain));
  const auto r = measure_report(2, Z2.generators(), 5, nested, chain);
  EXPECT_TRUE(r.unique);
  EXPECT_EQ(r.birkhoff.back().deviation, 0);
  EXPECT_EQ(parse_measure_report(emit_report(r, Format::json)), r);
}

TEST(RoundTrip, BigCoordinatesSurvive) {
  const GroupElement big(GroupKind::lattice, {Integer(1) << 90, Integer(-3)});
  EXPECT_EQ(element_from_json(to_json(big), GroupKind::lattice), big);
  EXPECT_TRUE(to_json(big)[0].is_string());
}

TEST(Emission, TextTables) {
  const auto text = emit_report(report_for(SubgroupChain(Z, {2, 4})), Format::text);
  EXPECT_NE(text.find("multiplicities: [2]"), std::string::npos);
  EXPECT_NE(text.find("2^inf"), std::string::npos);
}

TEST(Config, ParsesAllKeys) {
  const auto cfg = parse_config(R"(
group: {kind: heisenberg, rank: 3}
chain: [2, 4, 8]
depth: 2
epsilons: ["1/2", "1/4"]
generators: [[1, 0, 0], [0, 1, 0]]
size_cap: 1000
acceptance: third-prescreen
improvement_passes: 0
)");
  EXPECT_EQ(cfg.group, H);
  EXPECT_EQ(cfg.chain, (std::vector<std::uint64_t>{2, 4}));
  EXPECT_EQ(cfg.epsilons, (std::vector<Rational>{q(1, 2), q(1, 4)}));
  EXPECT_EQ(cfg.generators.size(), 2u);
  EXPECT_EQ(cfg.size_cap, 1000u);
  EXPECT_EQ(cfg.acceptance, AcceptanceRule::third_prescreen);
  EXPECT_EQ(cfg.improvement_passes, 0u);
}

TEST(Config, Defaults) {
  const auto cfg = parse_config("");
  EXPECT_EQ(cfg.group, Z);
  EXPECT_EQ(cfg.chain, (std::vector<std::uint64_t>{2, 4, 8, 16}));
}

TEST(Config, Rejections) {
  EXPECT_THROW(parse_config("chain: [2, 3]"), ValidationError);
  EXPECT_THROW(parse_config("chain: [2, 4]\ndepth: 3"), ValidationError);
  EXPECT_THROW(parse_config("epsilons: ['1/4', '1/2']"), ValidationError);
  EXPECT_THROW(parse_config("epsilons: ['0']"), ValidationError);
  EXPECT_THROW(parse_config("generators: [[1, 2]]"), ValidationError);
  EXPECT_THROW(parse_config("colour: blue"), ValidationError);
  EXPECT_THROW(parse_config("group: {kind: free, rank: 2}"), ValidationError);
  EXPECT_THROW(parse_config("group: {kind: heisenberg, rank: 2}"), ValidationError);
  EXPECT_THROW(parse_config("[1, 2"), ValidationError);
  EXPECT_THROW(load_config("/nonexistent/config.yaml"), ValidationError);
}
