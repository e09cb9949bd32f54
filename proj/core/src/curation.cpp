#include "meshtok/curation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <tuple>

#include <json.hpp>

#include "meshtok/error.hpp"
#include "meshtok/mesh_ops.hpp"

namespace meshtok {
namespace {

using Location = ParseError::Location;

// Iterates lines with 1-based numbering, stripping a trailing \r.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view row = text.substr(pos, end - pos);
    pos = end + 1;
    ++line;
    if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
    fn(row, line);
  }
}

std::vector<std::string_view> split(std::string_view row, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto at = row.find(sep, start);
    if (at == std::string_view::npos) {
      out.push_back(row.substr(start));
      return out;
    }
    out.push_back(row.substr(start, at - start));
    start = at + 1;
  }
}

std::vector<std::string_view> split_ws(std::string_view row) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < row.size()) {
    while (i < row.size() && (row[i] == ' ' || row[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < row.size() && row[i] != ' ' && row[i] != '\t') ++i;
    if (i > start) out.push_back(row.substr(start, i - start));
  }
  return out;
}

double parse_number(std::string_view token, std::size_t line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(Location::Line, line, "expected a number, got '" + std::string(token) + "'");
  }
  return value;
}

std::size_t parse_count(std::string_view token, std::size_t line) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(Location::Line, line, "expected a count, got '" + std::string(token) + "'");
  }
  return value;
}

std::string format_number(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

std::string join_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out += ", ";
    out += id;
  }
  return out;
}

std::optional<Choice> machine_choice(PairOutcome outcome) {
  switch (outcome) {
    case PairOutcome::PreferFirst: return Choice::A;
    case PairOutcome::PreferSecond: return Choice::B;
    default: return std::nullopt;
  }
}

using RowKey = std::tuple<std::string, std::string, std::string>;

RowKey key_of(const ManifestRow& row) { return {row.condition, row.mesh_a, row.mesh_b}; }

}  // namespace

void CurationConfig::validate() const {
  if (!(area_min >= 0.0)) {
    throw ConfigError("area_min must be non-negative");
  }
  if (loss_threshold && !(*loss_threshold >= 0.0)) {
    throw ConfigError("loss_threshold must be non-negative");
  }
  if (!(aesthetic_keep_fraction > 0.0 && aesthetic_keep_fraction <= 1.0)) {
    throw ConfigError("aesthetic_keep_fraction must lie in (0, 1]");
  }
  if (cd_threshold && !(*cd_threshold > 0.0)) {
    throw ConfigError("cd_threshold must be positive");
  }
}

CurationConfig parse_curation_config(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("curation config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("curation config must be a JSON object");
  }
  CurationConfig cfg;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "area_min") {
        cfg.area_min = value.get<double>();
      } else if (key == "loss_threshold") {
        cfg.loss_threshold = value.get<double>();
      } else if (key == "aesthetic_keep_fraction") {
        cfg.aesthetic_keep_fraction = value.get<double>();
      } else if (key == "face_min") {
        cfg.face_min = value.get<std::size_t>();
      } else if (key == "cd_threshold") {
        cfg.cd_threshold = value.get<double>();
      } else {
        throw ConfigError("unknown curation config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::type_error& e) {
    throw ConfigError(std::string("curation config has a value of the wrong type: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

std::optional<double> ScoreTable::find(std::string_view id) const {
  const auto it = scores.find(id);
  if (it == scores.end()) return std::nullopt;
  return it->second;
}

ScoreTable parse_score_table(std::string_view text, std::string label) {
  ScoreTable table;
  table.label = std::move(label);
  for_each_line(text, [&](std::string_view row, std::size_t line) {
    const auto hash = row.find('#');
    if (hash != std::string_view::npos) row = row.substr(0, hash);
    const auto fields = split_ws(row);
    if (fields.empty()) return;
    if (fields.size() != 2) {
      throw ParseError(Location::Line, line, "expected '<id> <score>'");
    }
    const double score = parse_number(fields[1], line);
    if (!std::isfinite(score)) {
      throw ParseError(Location::Line, line, "score is not finite");
    }
    if (!table.scores.emplace(std::string(fields[0]), score).second) {
      throw StructuralError(table.label + " table lists id '" + std::string(fields[0]) + "' twice");
    }
  });
  return table;
}

const char* to_string(DropReason reason) {
  switch (reason) {
    case DropReason::Area: return "area";
    case DropReason::Aesthetic: return "aesthetic";
  }
  return "?";
}

std::size_t rescue_count(std::size_t flagged, double fraction) {
  // The tolerance absorbs representation error, e.g. 0.2 * 10 landing just above 2.
  const double exact = fraction * static_cast<double>(flagged);
  return std::min(flagged, static_cast<std::size_t>(std::ceil(exact - 1e-9)));
}

CascadeResult run_filter_cascade(std::span<const CurationCandidate> candidates,
                                 const ScoreTable& losses, const ScoreTable& aesthetics,
                                 const CurationConfig& config) {
  config.validate();
  std::set<std::string_view> ids;
  for (const auto& c : candidates) {
    if (!ids.insert(c.id).second) {
      throw StructuralError("mesh id '" + c.id + "' appears twice");
    }
  }

  std::vector<bool> area_ok(candidates.size());
  for (std::size_t n = 0; n < candidates.size(); ++n) {
    area_ok[n] = !(candidates[n].area < config.area_min);
  }

  std::vector<bool> rescued(candidates.size(), false);
  std::vector<bool> flagged(candidates.size(), false);
  if (config.loss_threshold) {
    std::vector<std::string> missing;
    for (std::size_t n = 0; n < candidates.size(); ++n) {
      if (!area_ok[n]) continue;
      const auto loss = losses.find(candidates[n].id);
      if (!loss) {
        missing.push_back(candidates[n].id);
      } else if (*loss > *config.loss_threshold) {
        flagged[n] = true;
      }
    }
    if (!missing.empty()) {
      throw ConfigError(losses.label + " table lacks scores for: " + join_ids(missing));
    }

    std::vector<std::pair<double, std::size_t>> ranked;
    for (std::size_t n = 0; n < candidates.size(); ++n) {
      if (!flagged[n]) continue;
      const auto score = aesthetics.find(candidates[n].id);
      if (!score) {
        missing.push_back(candidates[n].id);
      } else {
        ranked.emplace_back(*score, n);
      }
    }
    if (!missing.empty()) {
      throw ConfigError(aesthetics.label + " table lacks scores for: " + join_ids(missing));
    }

    const std::size_t keep = rescue_count(ranked.size(), config.aesthetic_keep_fraction);
    if (keep > 0) {
      std::sort(ranked.begin(), ranked.end(),
                [](const auto& l, const auto& r) { return l.first > r.first; });
      const double cut = ranked[keep - 1].first;
      for (const auto& [score, n] : ranked) {
        if (score >= cut) rescued[n] = true;
      }
    }
  }

  CascadeResult result;
  for (std::size_t n = 0; n < candidates.size(); ++n) {
    const auto& id = candidates[n].id;
    if (!area_ok[n]) {
      result.dropped.push_back({id, DropReason::Area});
    } else if (flagged[n] && !rescued[n]) {
      result.dropped.push_back({id, DropReason::Aesthetic});
    } else {
      result.kept.push_back(id);
      if (rescued[n]) result.rescued.push_back(id);
    }
  }
  return result;
}

CascadeResult run_filter_cascade(std::span<const std::pair<std::string, Mesh>> meshes,
                                 const ScoreTable& losses, const ScoreTable& aesthetics,
                                 const CurationConfig& config) {
  std::vector<CurationCandidate> candidates;
  candidates.reserve(meshes.size());
  for (const auto& [id, mesh] : meshes) {
    candidates.push_back({id, mesh_area(mesh)});
  }
  return run_filter_cascade(candidates, losses, aesthetics, config);
}

const char* to_string(PairOutcome outcome) {
  switch (outcome) {
    case PairOutcome::DiscardBoth: return "discard_both";
    case PairOutcome::PreferFirst: return "prefer_first";
    case PairOutcome::PreferSecond: return "prefer_second";
    case PairOutcome::NeedsHuman: return "needs_human";
  }
  return "?";
}

std::optional<PairOutcome> parse_pair_outcome(std::string_view text) {
  for (const auto o : {PairOutcome::DiscardBoth, PairOutcome::PreferFirst,
                       PairOutcome::PreferSecond, PairOutcome::NeedsHuman}) {
    if (text == to_string(o)) return o;
  }
  return std::nullopt;
}

PairDecision decide_pair(double cd_first, double cd_second, double tau) {
  if (!std::isfinite(cd_first) || !std::isfinite(cd_second) || cd_first < 0.0 || cd_second < 0.0) {
    throw DomainError("Chamfer distances must be finite and non-negative");
  }
  if (!std::isfinite(tau) || !(tau > 0.0)) {
    throw DomainError("Chamfer threshold must be positive");
  }
  const bool first_ok = cd_first <= tau;
  const bool second_ok = cd_second <= tau;
  if (!first_ok && !second_ok) {
    return {PairOutcome::DiscardBoth, "both meshes exceed the Chamfer threshold"};
  }
  if (first_ok && !second_ok) {
    return {PairOutcome::PreferFirst, "only the first mesh is within the Chamfer threshold"};
  }
  if (!first_ok && second_ok) {
    return {PairOutcome::PreferSecond, "only the second mesh is within the Chamfer threshold"};
  }
  return {PairOutcome::NeedsHuman, "both meshes are within the Chamfer threshold"};
}

std::size_t PairManifest::unresolved() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const ManifestRow& r) {
    return r.outcome == PairOutcome::NeedsHuman && !r.chosen;
  }));
}

PairManifest build_pair_manifest(std::span<const PairCandidate> candidates,
                                 const CurationConfig& config) {
  config.validate();
  if (!config.cd_threshold) {
    throw ConfigError("cd_threshold is required to build preference pairs");
  }
  PairManifest manifest;
  std::set<RowKey> seen;
  for (const auto& c : candidates) {
    if (!seen.insert({c.condition, c.mesh_a, c.mesh_b}).second) {
      throw StructuralError("candidate (" + c.condition + ", " + c.mesh_a + ", " + c.mesh_b +
                            ") appears twice");
    }
    if (c.faces_a < config.face_min || c.faces_b < config.face_min) {
      manifest.excluded.push_back(c);
      continue;
    }
    const auto decision = decide_pair(c.cd_a, c.cd_b, *config.cd_threshold);
    manifest.rows.push_back(
        {c.condition, c.mesh_a, c.mesh_b, c.cd_a, c.cd_b, decision.outcome, machine_choice(decision.outcome)});
  }
  return manifest;
}

void write_pair_manifest(std::ostream& out, std::span<const ManifestRow> rows) {
  out << "condition_id\tA\tB\tcd_A\tcd_B\toutcome\tchosen\n";
  for (const auto& r : rows) {
    out << r.condition << '\t' << r.mesh_a << '\t' << r.mesh_b << '\t' << format_number(r.cd_a)
        << '\t' << format_number(r.cd_b) << '\t' << to_string(r.outcome) << '\t';
    if (r.chosen) out << (*r.chosen == Choice::A ? 'A' : 'B');
    out << '\n';
  }
}

std::vector<ManifestRow> read_pair_manifest(std::string_view text) {
  std::vector<ManifestRow> rows;
  std::set<RowKey> seen;
  for_each_line(text, [&](std::string_view row, std::size_t line) {
    if (row.empty()) return;
    const auto fields = split(row, '\t');
    if (line == 1 && !fields.empty() && fields[0] == "condition_id") return;
    if (fields.size() != 7) {
      throw ParseError(Location::Line, line, "expected 7 tab-separated columns");
    }
    ManifestRow r;
    r.condition = fields[0];
    r.mesh_a = fields[1];
    r.mesh_b = fields[2];
    r.cd_a = parse_number(fields[3], line);
    r.cd_b = parse_number(fields[4], line);
    const auto outcome = parse_pair_outcome(fields[5]);
    if (!outcome) {
      throw ParseError(Location::Line, line, "unknown outcome '" + std::string(fields[5]) + "'");
    }
    r.outcome = *outcome;
    if (fields[6] == "A") {
      r.chosen = Choice::A;
    } else if (fields[6] == "B") {
      r.chosen = Choice::B;
    } else if (!fields[6].empty()) {
      throw ParseError(Location::Line, line, "chosen must be A, B or empty");
    }
    if (r.outcome != PairOutcome::NeedsHuman && r.chosen != machine_choice(r.outcome)) {
      throw ParseError(Location::Line, line, "chosen contradicts the recorded outcome");
    }
    if (!seen.insert(key_of(r)).second) {
      throw StructuralError("line " + std::to_string(line) + ": duplicate (condition, A, B) row");
    }
    rows.push_back(std::move(r));
  });
  return rows;
}

std::vector<ManifestRow> merge_annotations(std::span<const ManifestRow> manifest,
                                           std::span<const ManifestRow> annotated) {
  std::vector<ManifestRow> merged(manifest.begin(), manifest.end());
  std::map<RowKey, std::size_t> index;
  for (std::size_t n = 0; n < merged.size(); ++n) {
    index.emplace(key_of(merged[n]), n);
  }
  for (const auto& a : annotated) {
    const auto it = index.find(key_of(a));
    if (it == index.end()) {
      throw StructuralError("annotation for unknown pair (" + a.condition + ", " + a.mesh_a + ", " +
                            a.mesh_b + ")");
    }
    auto& row = merged[it->second];
    if (row.outcome == PairOutcome::NeedsHuman) {
      if (a.chosen) row.chosen = a.chosen;
    } else if (a.chosen != row.chosen) {
      throw StructuralError("annotation overrides the machine decision for (" + a.condition +
                            ", " + a.mesh_a + ", " + a.mesh_b + ")");
    }
  }
  return merged;
}

std::vector<PairCandidate> read_pair_candidates(std::string_view text) {
  std::vector<PairCandidate> out;
  for_each_line(text, [&](std::string_view row, std::size_t line) {
    if (row.empty() || row.front() == '#') return;
    const auto fields = split(row, '\t');
    if (line == 1 && !fields.empty() && fields[0] == "condition_id") return;
    if (fields.size() != 7) {
      throw ParseError(Location::Line, line, "expected 7 tab-separated columns");
    }
    out.push_back({std::string(fields[0]), std::string(fields[1]), std::string(fields[2]),
                   parse_number(fields[3], line), parse_number(fields[4], line),
                   parse_count(fields[5], line), parse_count(fields[6], line)});
  });
  return out;
}

}  // namespace meshtok
