#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace meshtok::cli {

/// Expands directories (non-recursively, sorted) to the files whose extension
/// is in `extensions`. Plain file arguments pass through unchanged, even if
/// they do not exist, so that the per-item error is reported later.
std::vector<std::filesystem::path> expand_inputs(const std::vector<std::string>& args,
                                                 const std::vector<std::string>& extensions);

struct ItemResult {
  bool ok = true;
  std::string out;  ///< printed to stdout in input order
  std::string err;  ///< printed to stderr in input order
};

/// Runs `work` for indices [0, count) on up to `jobs` threads and prints the
/// results in index order. Returns the number of failed items.
std::size_t run_items(std::size_t count, unsigned jobs,
                      const std::function<ItemResult(std::size_t)>& work);

/// `<out_dir>/<stem of input><extension>`, creating out_dir when needed.
std::filesystem::path output_path(const std::filesystem::path& out_dir,
                                  const std::filesystem::path& input, const std::string& extension);

}  // namespace meshtok::cli
