#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "commands.hpp"
#include "meshtok/error.hpp"

namespace {

using namespace meshtok;
using namespace meshtok::cli;

VocabSpec parse_blocks(const std::string& text) {
  VocabSpec spec;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> spec.a >> c1 >> spec.b >> c2 >> spec.c) || c1 != ',' || c2 != ',' || !in.eof()) {
    throw CLI::ValidationError("--blocks", "expected A,B,C");
  }
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Triangle mesh tokenizer and training-data tools"};
  app.require_subcommand(1);

  GlobalOptions global;
  int resolution = 512;
  std::string blocks = "4,8,16";
  app.add_option("--resolution", resolution, "Quantization bins per axis (must equal A*B*C)")
      ->capture_default_str();
  app.add_option("--blocks", blocks, "Block sizes A,B,C")->capture_default_str();
  app.add_option("--seed", global.seed, "Seed for all randomness")->capture_default_str();
  app.add_option("--jobs", global.jobs, "Worker threads for per-file work")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.parse_complete_callback([&] {
    global.spec = parse_blocks(blocks);
    try {
      global.spec.validate();
    } catch (const Error& e) {
      throw CLI::ValidationError("--blocks", e.what());
    }
    if (global.spec.resolution() != resolution) {
      throw CLI::ValidationError("--resolution", "resolution " + std::to_string(resolution) +
                                                     " must equal A*B*C = " +
                                                     std::to_string(global.spec.resolution()));
    }
  });

  const std::map<std::string, Axis> axes = {{"X", Axis::X}, {"Y", Axis::Y}, {"Z", Axis::Z}};

  TokenizeOptions tok;
  auto* tokenize = app.add_subcommand("tokenize", "Encode meshes to DMTK token files");
  tokenize->add_option("inputs", tok.inputs, "Mesh files or directories")->required();
  tokenize->add_option("-o,--out-dir", tok.out_dir, "Output directory")->capture_default_str();
  tokenize->add_flag("!--no-normalize", tok.normalize,
                     "Quantize coordinates as given; they must lie in [0,1]");
  tokenize->add_option("--rotate", tok.quarter_turns, "Quarter turns applied before normalizing")
      ->check(CLI::Range(0, 3));
  tokenize->add_option("--axis", tok.axis, "Rotation axis")->transform(CLI::CheckedTransformer(axes));

  DetokenizeOptions detok;
  auto* detokenize = app.add_subcommand("detokenize", "Decode DMTK files to OBJ meshes");
  detokenize->add_option("inputs", detok.inputs, "DMTK files or directories")->required();
  detokenize->add_option("-o,--out-dir", detok.out_dir, "Output directory")->capture_default_str();

  RoundtripOptions rt;
  auto* roundtrip = app.add_subcommand("roundtrip", "Check encode/decode losslessness");
  roundtrip->add_option("inputs", rt.inputs, "Mesh files or directories")->required();
  roundtrip->add_flag("!--no-normalize", rt.normalize, "Quantize coordinates as given");

  StatsOptions st;
  auto* stats = app.add_subcommand("stats", "Print token statistics for meshes or DMTK files");
  stats->add_option("inputs", st.inputs, "Mesh or DMTK files or directories")->required();
  stats->add_flag("!--no-normalize", st.normalize, "Quantize coordinates as given");

  SampleOptions sm;
  auto* sample = app.add_subcommand("sample", "Sample surface points to .xyz files");
  sample->add_option("inputs", sm.inputs, "Mesh files or directories")->required();
  sample->add_option("-o,--out-dir", sm.out_dir, "Output directory")->capture_default_str();
  sample->add_option("-n,--n", sm.count, "Points kept")->check(CLI::PositiveNumber)->capture_default_str();
  sample->add_option("--dense", sm.dense, "Points drawn before subsampling (default: n)");

  MetricsOptions mt;
  auto* metrics = app.add_subcommand("metrics", "Chamfer and Hausdorff distances between meshes");
  metrics->add_option("inputs", mt.inputs, "Reference/generated mesh pairs");
  metrics->add_option("--pairs", mt.pairs_file, "File of '<id> <reference> <generated>' lines");
  metrics->add_option("-n,--n", mt.count, "Samples per mesh")->check(CLI::PositiveNumber)->capture_default_str();

  PackOptions pk;
  auto* pack = app.add_subcommand("pack", "Split token sequences into training windows");
  pack->add_option("inputs", pk.inputs, "DMTK files or directories")->required();
  pack->add_option("-o,--output", pk.output, "Window records (DMTK stream); an .idx file is written beside it")
      ->required();
  pack->add_option("--window", pk.window, "Window length")->capture_default_str();
  pack->add_option("--stride", pk.stride, "Window stride (default: window)");
  pack->add_option("--pad-id", pk.pad_id, "Padding id (default: vocabulary size)");
  pack->add_option("--batch-size", pk.batch_size, "Also plan batches of this size");
  pack->add_option("--bucket-by", pk.bucket_by, "Bucketing key: tokens or faces")->capture_default_str();
  pack->add_flag("--random-batches", pk.random_batches, "Plan random batches instead of buckets");
  pack->add_option("--manifest", pk.manifest, "Batch manifest path (default: <output>.batches)");

  CurateOptions cu;
  auto* curate = app.add_subcommand("curate", "Run the area/loss/aesthetic filter cascade");
  curate->add_option("inputs", cu.inputs, "Mesh files or directories; ids are file stems")->required();
  curate->add_option("--config", cu.config, "JSON curation config")->required();
  curate->add_option("--losses", cu.losses, "Loss score table");
  curate->add_option("--aesthetics", cu.aesthetics, "Aesthetic score table");
  curate->add_option("-o,--output", cu.output, "Result table")->required();

  auto* pairs = app.add_subcommand("pairs", "Build or merge preference-pair manifests");
  pairs->require_subcommand(1);
  PairsBuildOptions pb;
  auto* pairs_build = pairs->add_subcommand("build", "Gate candidates into a manifest");
  pairs_build->add_option("candidates", pb.candidates, "Candidate table")->required();
  pairs_build->add_option("--config", pb.config, "JSON curation config");
  pairs_build->add_option("--cd-threshold", pb.cd_threshold, "Chamfer threshold (overrides config)");
  pairs_build->add_option("--face-min", pb.face_min, "Face floor (overrides config)");
  pairs_build->add_option("-o,--output", pb.output, "Manifest path")->required();
  pairs_build->add_option("--excluded", pb.excluded, "Write face-floor exclusions here");
  PairsMergeOptions pm;
  auto* pairs_merge = pairs->add_subcommand("merge", "Fold human choices back into a manifest");
  pairs_merge->add_option("manifest", pm.manifest, "Machine manifest")->required();
  pairs_merge->add_option("annotated", pm.annotated, "Annotated manifest")->required();
  pairs_merge->add_option("-o,--output", pm.output, "Merged manifest path")->required();
  pairs_merge->add_flag("--require-complete", pm.require_complete, "Fail if choices are missing");

  DpoOptions dp;
  auto* dpo = app.add_subcommand("dpo", "Evaluate the preference loss on a batch table");
  dpo->add_option("batch", dp.batch,
                  "Rows of: policy_chosen reference_chosen policy_rejected reference_rejected")
      ->required();
  dpo->add_option("--beta", dp.beta, "Inverse temperature")->capture_default_str();
  dpo->add_option("--grad", dp.grad_output, "Write per-pair gradients here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*tokenize) return run_tokenize(global, tok);
    if (*detokenize) return run_detokenize(global, detok);
    if (*roundtrip) return run_roundtrip(global, rt);
    if (*stats) return run_stats(global, st);
    if (*sample) return run_sample(global, sm);
    if (*metrics) return run_metrics(global, mt);
    if (*pack) return run_pack(global, pk);
    if (*curate) return run_curate(global, cu);
    if (*pairs_build) return run_pairs_build(global, pb);
    if (*pairs_merge) return run_pairs_merge(global, pm);
    if (*dpo) return run_dpo(global, dp);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
