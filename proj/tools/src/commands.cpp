#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "inputs.hpp"
#include "meshtok/codec.hpp"
#include "meshtok/curation.hpp"
#include "meshtok/dpo.hpp"
#include "meshtok/error.hpp"
#include "meshtok/mesh_io.hpp"
#include "meshtok/metrics.hpp"
#include "meshtok/packing.hpp"
#include "meshtok/sampling.hpp"
#include "meshtok/token_io.hpp"

namespace meshtok::cli {
namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kMeshExtensions = {".obj", ".ply"};
const std::vector<std::string> kTokenExtensions = {".dmtk"};

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string sig6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

ItemResult failure(const fs::path& path, const std::string& what) {
  return {false, "", path.string() + ": " + what + "\n"};
}

// Runs `body` and turns any exception into a per-item failure.
template <typename Fn>
ItemResult guarded(const fs::path& path, Fn&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return failure(path, e.what());
  }
}

bool warn_if_empty(const std::vector<fs::path>& files) {
  if (files.empty()) {
    std::cerr << "warning: no input files found\n";
    return true;
  }
  return false;
}

QuantizedMesh load_quantized(const fs::path& path, const VocabSpec& spec, bool normalize_first,
                             Axis axis = Axis::Z, int quarter_turns = 0) {
  Mesh mesh = load_mesh_file(path);
  if (quarter_turns % 4 != 0) mesh = rotate90(mesh, axis, quarter_turns);
  if (normalize_first) mesh = normalize(mesh).mesh;
  return quantize(mesh, spec.resolution());
}

std::string stats_line(const fs::path& path, const TokenSequence& seq) {
  return path.string() + " faces=" + std::to_string(seq.face_count) +
         " tokens=" + std::to_string(seq.size()) + " ratio=" + fixed4(compression_ratio(seq)) +
         " patches=" + std::to_string(count_patches(seq.ids, seq.spec)) + "\n";
}

std::string as_bytes(const std::vector<std::uint8_t>& v) { return {v.begin(), v.end()}; }

// Face set up to cyclic rotation, by grid coordinates.
std::vector<std::array<GridPoint, 3>> face_set(const QuantizedMesh& m) {
  std::vector<std::array<GridPoint, 3>> out;
  out.reserve(m.faces.size());
  for (const auto& f : m.faces) {
    std::array<GridPoint, 3> t = {m.vertices[f[0]], m.vertices[f[1]], m.vertices[f[2]]};
    const auto lead = std::min_element(t.begin(), t.end()) - t.begin();
    std::rotate(t.begin(), t.begin() + lead, t.end());
    out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string_view> fields_of(std::string_view row) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < row.size()) {
    while (i < row.size() && (row[i] == ' ' || row[i] == '\t' || row[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < row.size() && row[i] != ' ' && row[i] != '\t' && row[i] != '\r') ++i;
    if (i > start) out.push_back(row.substr(start, i - start));
  }
  return out;
}

// Non-blank, non-comment lines with their 1-based numbers.
std::vector<std::pair<std::size_t, std::vector<std::string_view>>> table_rows(std::string_view text) {
  std::vector<std::pair<std::size_t, std::vector<std::string_view>>> rows;
  std::size_t line = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto row = text.substr(pos, end - pos);
    pos = end + 1;
    ++line;
    auto f = fields_of(row);
    if (f.empty() || f[0].front() == '#') continue;
    rows.emplace_back(line, std::move(f));
  }
  return rows;
}

double number_at(std::string_view token, std::size_t line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(ParseError::Location::Line, line,
                     "expected a number, got '" + std::string(token) + "'");
  }
  return value;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  write_file(path, text);
}

}  // namespace

int run_tokenize(const GlobalOptions& g, const TokenizeOptions& o) {
  const auto files = expand_inputs(o.inputs, kMeshExtensions);
  if (warn_if_empty(files)) return 0;
  const auto failures = run_items(files.size(), g.jobs, [&](std::size_t n) {
    const auto& path = files[n];
    return guarded(path, [&] {
      const auto qmesh = load_quantized(path, g.spec, o.normalize, o.axis, o.quarter_turns);
      if (qmesh.faces.empty()) return failure(path, "no faces left after quantization");
      const auto seq = encode(qmesh, g.spec);
      write_file(output_path(o.out_dir, path, ".dmtk"), as_bytes(to_dmtk(seq)));
      return ItemResult{true, stats_line(path, seq), ""};
    });
  });
  return failures == 0 ? 0 : 1;
}

int run_detokenize(const GlobalOptions& g, const DetokenizeOptions& o) {
  const auto files = expand_inputs(o.inputs, kTokenExtensions);
  if (warn_if_empty(files)) return 0;
  const auto failures = run_items(files.size(), g.jobs, [&](std::size_t n) {
    const auto& path = files[n];
    return guarded(path, [&] {
      const auto seq = from_dmtk(read_file(path));
      const auto qmesh = decode(seq);
      const auto out = output_path(o.out_dir, path, ".obj");
      write_obj_file(out, dequantize(qmesh));
      return ItemResult{true,
                        path.string() + " -> " + out.string() +
                            " vertices=" + std::to_string(qmesh.vertices.size()) +
                            " faces=" + std::to_string(qmesh.faces.size()) + "\n",
                        ""};
    });
  });
  return failures == 0 ? 0 : 1;
}

int run_roundtrip(const GlobalOptions& g, const RoundtripOptions& o) {
  const auto files = expand_inputs(o.inputs, kMeshExtensions);
  if (warn_if_empty(files)) return 0;
  const auto failures = run_items(files.size(), g.jobs, [&](std::size_t n) {
    const auto& path = files[n];
    try {
      const auto qmesh = load_quantized(path, g.spec, o.normalize);
      const auto seq = encode(qmesh, g.spec);
      const auto back = decode(from_dmtk(as_bytes(to_dmtk(seq))));
      if (face_set(back) != face_set(qmesh)) {
        return ItemResult{false, "FAIL " + path.string() + ": decoded faces differ\n", ""};
      }
      return ItemResult{true,
                        "PASS " + path.string() + " faces=" + std::to_string(qmesh.faces.size()) +
                            " tokens=" + std::to_string(seq.size()) + "\n",
                        ""};
    } catch (const std::exception& e) {
      return ItemResult{false, "FAIL " + path.string() + ": " + e.what() + "\n", ""};
    }
  });
  std::cout << "roundtrip: " << (files.size() - failures) << "/" << files.size() << " passed\n";
  return failures == 0 ? 0 : 1;
}

int run_stats(const GlobalOptions& g, const StatsOptions& o) {
  std::vector<std::string> exts = kMeshExtensions;
  exts.insert(exts.end(), kTokenExtensions.begin(), kTokenExtensions.end());
  const auto files = expand_inputs(o.inputs, exts);
  if (warn_if_empty(files)) return 0;
  const auto failures = run_items(files.size(), g.jobs, [&](std::size_t n) {
    const auto& path = files[n];
    return guarded(path, [&] {
      if (path.extension() == ".dmtk") {
        const auto seq = from_dmtk(read_file(path));
        return ItemResult{true, stats_line(path, seq), ""};
      }
      const auto qmesh = load_quantized(path, g.spec, o.normalize);
      if (qmesh.faces.empty()) return failure(path, "no faces left after quantization");
      return ItemResult{true, stats_line(path, encode(qmesh, g.spec)), ""};
    });
  });
  return failures == 0 ? 0 : 1;
}

int run_sample(const GlobalOptions& g, const SampleOptions& o) {
  const auto files = expand_inputs(o.inputs, kMeshExtensions);
  if (warn_if_empty(files)) return 0;
  const std::size_t dense = o.dense == 0 ? o.count : o.dense;
  const auto failures = run_items(files.size(), g.jobs, [&](std::size_t n) {
    const auto& path = files[n];
    return guarded(path, [&] {
      const auto set = sample_surface(load_mesh_file(path), dense, o.count, g.seed);
      std::string text;
      for (const auto& p : set.points) {
        text += shortest(p.x) + ' ' + shortest(p.y) + ' ' + shortest(p.z) + '\n';
      }
      const auto out = output_path(o.out_dir, path, ".xyz");
      write_file(out, text);
      return ItemResult{true,
                        path.string() + " -> " + out.string() + " n=" +
                            std::to_string(set.points.size()) + " seed=" + std::to_string(g.seed) +
                            "\n",
                        ""};
    });
  });
  return failures == 0 ? 0 : 1;
}

int run_metrics(const GlobalOptions& g, const MetricsOptions& o) {
  struct Job {
    std::string id;
    fs::path reference;
    fs::path generated;
  };
  std::vector<Job> jobs;
  if (!o.pairs_file.empty()) {
    const auto text = read_file(o.pairs_file);
    for (const auto& [line, f] : table_rows(text)) {
      if (f.size() != 3) {
        throw ParseError(ParseError::Location::Line, line,
                         "expected '<id> <reference> <generated>'");
      }
      jobs.push_back({std::string(f[0]), fs::path(f[1]), fs::path(f[2])});
    }
  }
  if (o.inputs.size() % 2 != 0) {
    throw ConfigError("metrics takes mesh files in reference/generated pairs");
  }
  for (std::size_t n = 0; n < o.inputs.size(); n += 2) {
    jobs.push_back({o.inputs[n + 1], o.inputs[n], o.inputs[n + 1]});
  }
  if (jobs.empty()) {
    std::cerr << "warning: no mesh pairs given\n";
    return 0;
  }
  const auto failures = run_items(jobs.size(), g.jobs, [&](std::size_t n) {
    const auto& job = jobs[n];
    try {
      const auto report = evaluate_pair(load_mesh_file(job.reference),
                                        load_mesh_file(job.generated), o.count, g.seed);
      return ItemResult{true,
                        job.id + " chamfer=" + sig6(report.chamfer) +
                            " hausdorff=" + sig6(report.hausdorff) +
                            " n=" + std::to_string(report.sample_count) +
                            " seed=" + std::to_string(report.seed) + "\n",
                        ""};
    } catch (const std::exception& e) {
      return ItemResult{false, "", job.id + ": " + e.what() + "\n"};
    }
  });
  return failures == 0 ? 0 : 1;
}

int run_pack(const GlobalOptions& g, const PackOptions& o) {
  WindowSpec spec;
  spec.length = o.window;
  spec.stride = o.stride.value_or(o.window);
  spec.pad_id = o.pad_id.value_or(vocab_size(g.spec));
  spec.validate(vocab_size(g.spec));
  if (spec.pad_id > 0xffff) {
    throw ConfigError("pad id must fit in 16 bits for DMTK output");
  }
  if (o.bucket_by != "tokens" && o.bucket_by != "faces") {
    throw ConfigError("--bucket-by must be 'tokens' or 'faces'");
  }

  const auto files = expand_inputs(o.inputs, kTokenExtensions);
  if (warn_if_empty(files)) return 0;

  std::vector<TokenSequence> sequences;
  std::size_t failures = 0;
  for (const auto& path : files) {
    try {
      for (auto& seq : read_dmtk_stream(read_file(path))) {
        if (seq.spec != g.spec) {
          throw ConfigError("block sizes differ from the selected vocabulary");
        }
        sequences.push_back(std::move(seq));
      }
    } catch (const std::exception& e) {
      std::cerr << path.string() << ": " << e.what() << "\n";
      ++failures;
    }
  }

  std::string records;
  std::string index = "window\tsource\toffset\tvalid_length\n";
  std::size_t window_count = 0;
  std::size_t token_count = 0;
  for (std::size_t source = 0; source < sequences.size(); ++source) {
    const auto& seq = sequences[source];
    token_count += seq.size();
    for (const auto& w : split_windows(seq.ids, source, spec)) {
      TokenSequence record;
      record.spec = seq.spec;
      record.face_count = 0;
      record.ids = w.ids;
      records += as_bytes(to_dmtk(record));
      index += std::to_string(window_count++) + '\t' + std::to_string(source) + '\t' +
               std::to_string(w.offset) + '\t' + std::to_string(w.valid_length) + '\n';
    }
  }
  write_text(o.output, records);
  write_text(o.output + ".idx", index);
  std::cout << "sequences=" << sequences.size() << " tokens=" << token_count
            << " windows=" << window_count;

  if (o.batch_size > 0) {
    std::vector<SequenceLength> lengths;
    for (std::size_t n = 0; n < sequences.size(); ++n) {
      const auto& seq = sequences[n];
      lengths.push_back({n, o.bucket_by == "faces" ? seq.face_count : seq.size()});
    }
    const auto plan = o.random_batches ? random_batches(lengths, o.batch_size, g.seed)
                                       : bucket_sequences(lengths, o.batch_size, g.seed);
    // Padding is always measured in tokens, whatever the bucketing key.
    std::vector<SequenceLength> tokens;
    for (std::size_t n = 0; n < sequences.size(); ++n) tokens.push_back({n, sequences[n].size()});
    std::ostringstream manifest;
    write_batch_manifest(manifest, plan);
    write_text(o.manifest.empty() ? o.output + ".batches" : o.manifest, manifest.str());
    std::cout << " batches=" << plan.batches.size()
              << " padding=" << fixed4(padding_fraction(plan, tokens, spec));
  }
  std::cout << "\n";
  return failures == 0 ? 0 : 1;
}

int run_curate(const GlobalOptions& g, const CurateOptions& o) {
  const auto config = parse_curation_config(read_file(o.config));
  const auto losses =
      o.losses.empty() ? ScoreTable{"loss", {}} : parse_score_table(read_file(o.losses), o.losses);
  const auto aesthetics = o.aesthetics.empty()
                              ? ScoreTable{"aesthetic", {}}
                              : parse_score_table(read_file(o.aesthetics), o.aesthetics);

  const auto files = expand_inputs(o.inputs, kMeshExtensions);
  if (warn_if_empty(files)) return 0;

  std::vector<CurationCandidate> candidates(files.size());
  std::vector<char> loaded(files.size(), 0);
  const auto failures = run_items(files.size(), g.jobs, [&](std::size_t n) {
    return guarded(files[n], [&] {
      candidates[n] = {files[n].stem().string(), mesh_area(load_mesh_file(files[n]))};
      loaded[n] = 1;
      return ItemResult{};
    });
  });
  std::vector<CurationCandidate> usable;
  for (std::size_t n = 0; n < files.size(); ++n) {
    if (loaded[n]) usable.push_back(candidates[n]);
  }

  const auto result = run_filter_cascade(usable, losses, aesthetics, config);
  std::map<std::string, std::string> status;
  for (const auto& id : result.kept) status[id] = "kept\t";
  for (const auto& id : result.rescued) status[id] = "kept\trescued";
  for (const auto& d : result.dropped) status[d.id] = std::string("dropped\t") + to_string(d.reason);
  std::string table = "id\tstatus\treason\n";
  for (const auto& c : usable) table += c.id + '\t' + status[c.id] + '\n';
  write_text(o.output, table);

  std::cout << "kept=" << result.kept.size() << " dropped=" << result.dropped.size()
            << " rescued=" << result.rescued.size() << "\n";
  return failures == 0 ? 0 : 1;
}

int run_pairs_build(const GlobalOptions&, const PairsBuildOptions& o) {
  CurationConfig config = o.config.empty() ? CurationConfig{} : parse_curation_config(read_file(o.config));
  if (o.cd_threshold) config.cd_threshold = o.cd_threshold;
  if (o.face_min) config.face_min = *o.face_min;
  const auto candidates = read_pair_candidates(read_file(o.candidates));
  const auto manifest = build_pair_manifest(candidates, config);

  std::ostringstream out;
  write_pair_manifest(out, manifest.rows);
  write_text(o.output, out.str());
  if (!o.excluded.empty()) {
    std::string text = "condition_id\tA\tB\tfaces_A\tfaces_B\n";
    for (const auto& c : manifest.excluded) {
      text += c.condition + '\t' + c.mesh_a + '\t' + c.mesh_b + '\t' + std::to_string(c.faces_a) +
              '\t' + std::to_string(c.faces_b) + '\n';
    }
    write_text(o.excluded, text);
  }

  std::map<PairOutcome, std::size_t> counts;
  for (const auto& r : manifest.rows) ++counts[r.outcome];
  std::cout << "rows=" << manifest.rows.size() << " excluded=" << manifest.excluded.size();
  for (const auto outcome : {PairOutcome::DiscardBoth, PairOutcome::PreferFirst,
                             PairOutcome::PreferSecond, PairOutcome::NeedsHuman}) {
    std::cout << ' ' << to_string(outcome) << '=' << counts[outcome];
  }
  std::cout << "\n";
  return 0;
}

int run_pairs_merge(const GlobalOptions&, const PairsMergeOptions& o) {
  const auto manifest = read_pair_manifest(read_file(o.manifest));
  const auto annotated = read_pair_manifest(read_file(o.annotated));
  PairManifest merged{merge_annotations(manifest, annotated), {}};
  std::ostringstream out;
  write_pair_manifest(out, merged.rows);
  write_text(o.output, out.str());
  std::cout << "rows=" << merged.rows.size() << " unresolved=" << merged.unresolved() << "\n";
  if (o.require_complete && merged.unresolved() > 0) {
    std::cerr << "error: " << merged.unresolved() << " pair(s) still need a human choice\n";
    return 1;
  }
  return 0;
}

int run_dpo(const GlobalOptions&, const DpoOptions& o) {
  DpoBatch batch;
  batch.beta = o.beta;
  const auto text = read_file(o.batch);
  for (const auto& [line, f] : table_rows(text)) {
    if (f.size() != 4) {
      throw ParseError(ParseError::Location::Line, line,
                       "expected policy_chosen reference_chosen policy_rejected reference_rejected");
    }
    batch.pairs.push_back({number_at(f[0], line), number_at(f[1], line), number_at(f[2], line),
                           number_at(f[3], line)});
  }
  std::cout << sig6(dpo_loss(batch)) << "\n";
  if (!o.grad_output.empty()) {
    std::string out = "policy_chosen\treference_chosen\tpolicy_rejected\treference_rejected\n";
    for (const auto& gr : dpo_loss_grad(batch)) {
      out += shortest(gr.policy_chosen) + '\t' + shortest(gr.reference_chosen) + '\t' +
             shortest(gr.policy_rejected) + '\t' + shortest(gr.reference_rejected) + '\n';
    }
    write_text(o.grad_output, out);
  }
  return 0;
}

}  // namespace meshtok::cli
