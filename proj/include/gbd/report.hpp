#pragma once

#include "gbd/groupoid.hpp"
#include "gbd/measure.hpp"
#include "gbd/tiling.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gbd {

struct GeneratorDefect {
  GroupElement generator;
  Rational left;
  Rational right;

  friend bool operator==(const GeneratorDefect&, const GeneratorDefect&) = default;
};

struct LevelSummary {
  std::size_t level = 0;
  std::uint64_t modulus = 0;
  std::uint64_t index = 0;
  std::uint64_t tile_size = 0;
  std::vector<GeneratorDefect> defects;

  friend bool operator==(const LevelSummary&, const LevelSummary&) = default;
};

/// One prime of a supernatural number; an empty exponent stands for infinity.
struct SupernaturalFactor {
  std::uint64_t prime = 0;
  std::optional<std::uint64_t> exponent;

  friend bool operator==(const SupernaturalFactor&, const SupernaturalFactor&) = default;
};

/// Bratteli-style data of the nested tile chain: matrix sizes per selected
/// level and the connecting multiplicities [L_{n_k} : L_{n_k+1}].
struct AFChainReport {
  GroupSignature group;
  std::vector<std::uint64_t> moduli;
  std::string selection;  // "all-levels", "measured" or "third-prescreen"
  std::vector<Rational> epsilons;
  std::vector<LevelSummary> levels;
  std::vector<std::uint64_t> multiplicities;
  /// Only for Z. Primes dividing the last multiplicity are taken to recur
  /// forever (infinite exponent); the others keep their exponent in the last index.
  std::optional<std::vector<SupernaturalFactor>> supernatural;

  friend bool operator==(const AFChainReport&, const AFChainReport&) = default;
};

AFChainReport af_chain_report(const NestedTileChain& nested, const SubgroupChain& chain);

/// Prime factorization of a positive integer by trial division, ascending.
std::vector<std::pair<std::uint64_t, std::uint64_t>> factorize(std::uint64_t value);

struct BirkhoffRow {
  std::size_t window_level = 0;
  std::uint64_t window_size = 0;
  Rational average;
  Rational haar;
  Rational deviation;

  friend bool operator==(const BirkhoffRow&, const BirkhoffRow&) = default;
};

struct MeasureReport {
  GroupSignature group;
  std::vector<std::uint64_t> moduli;
  std::size_t level = 0;
  std::vector<GroupElement> generators;
  bool unique = false;
  std::vector<Rational> masses;
  std::vector<std::vector<Label>> classes;
  std::vector<OrbitStep> trace;
  Label target_label = 0;
  std::vector<BirkhoffRow> birkhoff;

  friend bool operator==(const MeasureReport&, const MeasureReport&) = default;
};

/// Solves the invariant measure at `level` and tabulates Birkhoff averages of
/// the indicator of cylinder (level, target_label) over the nested tiles.
MeasureReport measure_report(std::size_t level, std::span<const GroupElement> generators,
                             Label target_label, const NestedTileChain& nested,
                             const SubgroupChain& chain);

enum class Format { json, text };

Format parse_format(std::string_view name);

// Canonical JSON: sorted keys, rationals as "p/q", elements as coordinate arrays.
nlohmann::json to_json(const GroupElement& g);
GroupElement element_from_json(const nlohmann::json& j, GroupKind kind);
nlohmann::json to_json(const AFChainReport& report);
nlohmann::json to_json(const GraphCertificate& cert);
nlohmann::json to_json(const MeasureReport& report);

AFChainReport parse_af_chain_report(std::string_view json);
GraphCertificate parse_graph_certificate(std::string_view json);
MeasureReport parse_measure_report(std::string_view json);

std::string emit_report(const AFChainReport& report, Format format);
std::string emit_report(const GraphCertificate& cert, Format format);
std::string emit_report(const MeasureReport& report, Format format);

/// JSON documents are dumped with two-space indentation and a trailing newline.
std::string dump_canonical(const nlohmann::json& j);

}  // namespace gbd
