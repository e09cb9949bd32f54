#include "inputs.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <iostream>
#include <thread>

namespace meshtok::cli {
namespace fs = std::filesystem;

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

std::vector<fs::path> expand_inputs(const std::vector<std::string>& args,
                                    const std::vector<std::string>& extensions) {
  std::vector<fs::path> out;
  for (const auto& arg : args) {
    std::error_code ec;
    if (!fs::is_directory(arg, ec)) {
      out.emplace_back(arg);
      continue;
    }
    std::vector<fs::path> found;
    for (const auto& entry : fs::directory_iterator(arg, ec)) {
      if (!entry.is_regular_file()) continue;
      const auto ext = lower(entry.path().extension().string());
      if (std::find(extensions.begin(), extensions.end(), ext) != extensions.end()) {
        found.push_back(entry.path());
      }
    }
    std::sort(found.begin(), found.end());
    out.insert(out.end(), found.begin(), found.end());
  }
  return out;
}

std::size_t run_items(std::size_t count, unsigned jobs,
                      const std::function<ItemResult(std::size_t)>& work) {
  std::vector<ItemResult> results(count);
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (threads <= 1) {
    for (std::size_t n = 0; n < count; ++n) results[n] = work(n);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t n = next++; n < count; n = next++) results[n] = work(n);
      });
    }
    for (auto& th : pool) th.join();
  }
  std::size_t failures = 0;
  for (const auto& r : results) {
    std::cout << r.out;
    std::cerr << r.err;
    if (!r.ok) ++failures;
  }
  std::cout.flush();
  return failures;
}

fs::path output_path(const fs::path& out_dir, const fs::path& input, const std::string& extension) {
  fs::create_directories(out_dir);
  return out_dir / (input.stem().string() + extension);
}

}  // namespace meshtok::cli
