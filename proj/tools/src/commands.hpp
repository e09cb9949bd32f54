#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "meshtok/mesh_ops.hpp"
#include "meshtok/vocab.hpp"

namespace meshtok::cli {

struct GlobalOptions {
  VocabSpec spec;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

struct TokenizeOptions {
  std::vector<std::string> inputs;
  std::string out_dir = ".";
  bool normalize = true;
  Axis axis = Axis::Z;
  int quarter_turns = 0;
};

struct DetokenizeOptions {
  std::vector<std::string> inputs;
  std::string out_dir = ".";
};

struct RoundtripOptions {
  std::vector<std::string> inputs;
  bool normalize = true;
};

struct StatsOptions {
  std::vector<std::string> inputs;
  bool normalize = true;
};

struct SampleOptions {
  std::vector<std::string> inputs;
  std::string out_dir = ".";
  std::size_t count = 1024;
  std::size_t dense = 0;  ///< 0 means equal to count
};

struct MetricsOptions {
  std::vector<std::string> inputs;  ///< reference, generated, reference, generated, ...
  std::string pairs_file;           ///< `<id> <reference> <generated>` per line
  std::size_t count = 1024;
};

struct PackOptions {
  std::vector<std::string> inputs;
  std::string output;
  std::size_t window = 9000;
  std::optional<std::size_t> stride;
  std::optional<std::uint32_t> pad_id;
  std::size_t batch_size = 0;
  std::string bucket_by = "tokens";
  bool random_batches = false;
  std::string manifest;
};

struct CurateOptions {
  std::vector<std::string> inputs;
  std::string config;
  std::string losses;
  std::string aesthetics;
  std::string output;
};

struct PairsBuildOptions {
  std::string candidates;
  std::string config;
  std::optional<double> cd_threshold;
  std::optional<std::size_t> face_min;
  std::string output;
  std::string excluded;
};

struct PairsMergeOptions {
  std::string manifest;
  std::string annotated;
  std::string output;
  bool require_complete = false;
};

struct DpoOptions {
  std::string batch;
  double beta = 0.1;
  std::string grad_output;
};

// Each returns the process exit code: 0 on success, 1 when any item failed.
int run_tokenize(const GlobalOptions& g, const TokenizeOptions& o);
int run_detokenize(const GlobalOptions& g, const DetokenizeOptions& o);
int run_roundtrip(const GlobalOptions& g, const RoundtripOptions& o);
int run_stats(const GlobalOptions& g, const StatsOptions& o);
int run_sample(const GlobalOptions& g, const SampleOptions& o);
int run_metrics(const GlobalOptions& g, const MetricsOptions& o);
int run_pack(const GlobalOptions& g, const PackOptions& o);
int run_curate(const GlobalOptions& g, const CurateOptions& o);
int run_pairs_build(const GlobalOptions& g, const PairsBuildOptions& o);
int run_pairs_merge(const GlobalOptions& g, const PairsMergeOptions& o);
int run_dpo(const GlobalOptions& g, const DpoOptions& o);

}  // namespace meshtok::cli
