#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "meshtok/geometry.hpp"

namespace meshtok {

struct CurationConfig {
  double area_min = 1.0;
  /// Loss filtering (and aesthetic rescue) runs only when this is set.
  std::optional<double> loss_threshold;
  double aesthetic_keep_fraction = 0.2;
  std::size_t face_min = 5000;
  /// Chamfer gate for preference pairs. No default; required by pair building.
  std::optional<double> cd_threshold;

  /// Throws ConfigError for out-of-range values.
  void validate() const;
};

/// Reads a JSON object with any of the keys area_min, loss_threshold,
/// aesthetic_keep_fraction, face_min and cd_threshold.
CurationConfig parse_curation_config(std::string_view json_text);

/// Externally produced per-mesh scores (test loss, aesthetic score).
struct ScoreTable {
  std::string label;
  std::map<std::string, double, std::less<>> scores;

  std::optional<double> find(std::string_view id) const;
};

/// Two whitespace-separated columns `<id> <float>` per line; blank lines and
/// `#` comments are skipped. Duplicate ids raise StructuralError.
ScoreTable parse_score_table(std::string_view text, std::string label);

enum class DropReason { Area, Aesthetic };

const char* to_string(DropReason reason);

struct CurationCandidate {
  std::string id;
  double area = 0.0;
};

struct DroppedMesh {
  std::string id;
  DropReason reason;
};

struct CascadeResult {
  std::vector<std::string> kept;      ///< input order
  std::vector<DroppedMesh> dropped;   ///< input order
  std::vector<std::string> rescued;   ///< flagged by loss, kept by aesthetics
};

/// Area floor, then loss flagging, then aesthetic rescue of the top fraction
/// of flagged meshes (ties at the cut survive). Missing scores raise
/// ConfigError naming every absent id.
CascadeResult run_filter_cascade(std::span<const CurationCandidate> candidates,
                                 const ScoreTable& losses, const ScoreTable& aesthetics,
                                 const CurationConfig& config);

/// Convenience overload that measures each mesh's area first.
CascadeResult run_filter_cascade(std::span<const std::pair<std::string, Mesh>> meshes,
                                 const ScoreTable& losses, const ScoreTable& aesthetics,
                                 const CurationConfig& config);

/// Number of flagged meshes rescued: ceil(fraction * flagged), before ties.
std::size_t rescue_count(std::size_t flagged, double fraction);

enum class PairOutcome { DiscardBoth, PreferFirst, PreferSecond, NeedsHuman };

const char* to_string(PairOutcome outcome);
std::optional<PairOutcome> parse_pair_outcome(std::string_view text);

struct PairDecision {
  PairOutcome outcome;
  const char* rationale;
};

/// Both above tau: discard. Exactly one at or below tau: prefer it. Both at
/// or below tau: defer to a human. Throws DomainError for negative or
/// non-finite distances and non-positive tau.
PairDecision decide_pair(double cd_first, double cd_second, double tau);

struct PairCandidate {
  std::string condition;
  std::string mesh_a;
  std::string mesh_b;
  double cd_a = 0.0;
  double cd_b = 0.0;
  std::size_t faces_a = 0;
  std::size_t faces_b = 0;
};

enum class Choice { A, B };

struct ManifestRow {
  std::string condition;
  std::string mesh_a;
  std::string mesh_b;
  double cd_a = 0.0;
  double cd_b = 0.0;
  PairOutcome outcome = PairOutcome::NeedsHuman;
  std::optional<Choice> chosen;
};

struct PairManifest {
  std::vector<ManifestRow> rows;
  /// Candidates removed by the face-count floor.
  std::vector<PairCandidate> excluded;

  /// Rows still waiting for a human choice.
  std::size_t unresolved() const;
};

/// Applies the face floor, then decide_pair with cfg.cd_threshold. Throws
/// ConfigError when the threshold is unset and StructuralError for a repeated
/// (condition, A, B) triple.
PairManifest build_pair_manifest(std::span<const PairCandidate> candidates,
                                 const CurationConfig& config);

/// Tab-separated with a header line:
/// condition_id A B cd_A cd_B outcome chosen
void write_pair_manifest(std::ostream& out, std::span<const ManifestRow> rows);
std::vector<ManifestRow> read_pair_manifest(std::string_view text);

/// Copies human choices from `annotated` into the needs_human rows of
/// `manifest`. Rows are matched on (condition, A, B); an annotated row that
/// has no counterpart or contradicts a machine decision raises StructuralError.
std::vector<ManifestRow> merge_annotations(std::span<const ManifestRow> manifest,
                                           std::span<const ManifestRow> annotated);

/// Tab-separated candidate list:
/// condition_id A B cd_A cd_B faces_A faces_B
std::vector<PairCandidate> read_pair_candidates(std::string_view text);

}  // namespace meshtok
