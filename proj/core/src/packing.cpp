#include "meshtok/packing.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <ostream>
#include <string>
#include <unordered_map>

#include "meshtok/error.hpp"
#include "meshtok/random.hpp"

namespace meshtok {
namespace {

void check_batch_size(std::size_t batch_size) {
  if (batch_size == 0) {
    throw ConfigError("batch size must be at least 1");
  }
}

BatchPlan cut_batches(const std::vector<std::uint64_t>& order, std::size_t batch_size) {
  BatchPlan plan;
  plan.batch_size = batch_size;
  for (std::size_t start = 0; start < order.size(); start += batch_size) {
    const std::size_t end = std::min(order.size(), start + batch_size);
    plan.batches.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(start),
                              order.begin() + static_cast<std::ptrdiff_t>(end));
  }
  return plan;
}

template <typename T>
void shuffle(std::vector<T>& items, std::uint64_t seed) {
  Rng rng(seed);
  for (std::size_t n = items.size(); n > 1; --n) {
    const auto pick = static_cast<std::size_t>(rng.below(n));
    std::swap(items[n - 1], items[pick]);
  }
}

}  // namespace

void WindowSpec::validate(std::uint32_t vocabulary) const {
  if (length == 0) {
    throw ConfigError("window length must be positive");
  }
  if (stride == 0 || stride > length) {
    throw ConfigError("stride must lie in [1, window length]");
  }
  if (pad_id < vocabulary) {
    throw ConfigError("pad id " + std::to_string(pad_id) + " collides with the vocabulary (size " +
                      std::to_string(vocabulary) + ")");
  }
}

std::vector<Window> split_windows(std::span<const std::uint32_t> ids, std::uint64_t source,
                                  const WindowSpec& spec) {
  if (spec.length == 0 || spec.stride == 0 || spec.stride > spec.length) {
    throw ConfigError("stride must lie in [1, window length]");
  }
  std::vector<Window> windows;
  for (std::size_t offset = 0; offset < ids.size(); offset += spec.stride) {
    Window w;
    w.source = source;
    w.offset = offset;
    w.valid_length = std::min(spec.length, ids.size() - offset);
    w.ids.assign(spec.length, spec.pad_id);
    std::copy_n(ids.begin() + static_cast<std::ptrdiff_t>(offset), w.valid_length, w.ids.begin());
    windows.push_back(std::move(w));
  }
  return windows;
}

BatchPlan bucket_sequences(std::span<const SequenceLength> lengths, std::size_t batch_size,
                           std::uint64_t seed) {
  check_batch_size(batch_size);
  std::vector<SequenceLength> sorted(lengths.begin(), lengths.end());
  std::sort(sorted.begin(), sorted.end(), [](const SequenceLength& l, const SequenceLength& r) {
    return l.tokens != r.tokens ? l.tokens > r.tokens : l.id < r.id;
  });
  std::vector<std::uint64_t> order;
  order.reserve(sorted.size());
  for (const auto& s : sorted) order.push_back(s.id);

  BatchPlan plan = cut_batches(order, batch_size);
  shuffle(plan.batches, seed);
  return plan;
}

BatchPlan random_batches(std::span<const SequenceLength> lengths, std::size_t batch_size,
                         std::uint64_t seed) {
  check_batch_size(batch_size);
  std::vector<std::uint64_t> order;
  order.reserve(lengths.size());
  for (const auto& s : lengths) order.push_back(s.id);
  shuffle(order, seed);
  return cut_batches(order, batch_size);
}

double padding_fraction(const BatchPlan& plan, std::span<const SequenceLength> lengths,
                        const WindowSpec& spec) {
  if (spec.length == 0 || spec.stride == 0 || spec.stride > spec.length) {
    throw ConfigError("stride must lie in [1, window length]");
  }
  std::unordered_map<std::uint64_t, std::size_t> length_of;
  for (const auto& s : lengths) {
    if (!length_of.emplace(s.id, s.tokens).second) {
      throw StructuralError("sequence id " + std::to_string(s.id) + " listed twice");
    }
  }
  std::unordered_map<std::uint64_t, int> seen;
  double total = 0.0;
  double padding = 0.0;
  for (const auto& batch : plan.batches) {
    std::size_t longest = 0;
    for (const auto id : batch) {
      const auto it = length_of.find(id);
      if (it == length_of.end()) {
        throw StructuralError("plan names unknown sequence id " + std::to_string(id));
      }
      if (++seen[id] > 1) {
        throw StructuralError("plan names sequence id " + std::to_string(id) + " twice");
      }
      longest = std::max(longest, it->second);
    }
    const std::size_t steps = (longest + spec.stride - 1) / spec.stride;
    for (std::size_t step = 0; step < steps; ++step) {
      // Each step's batch tensor is as wide as its widest member window.
      const std::size_t offset = step * spec.stride;
      const std::size_t width = std::min(spec.length, longest - offset);
      for (const auto id : batch) {
        const std::size_t len = length_of[id];
        const std::size_t valid = offset < len ? std::min(spec.length, len - offset) : 0;
        total += static_cast<double>(width);
        padding += static_cast<double>(width - std::min(width, valid));
      }
    }
  }
  if (seen.size() != length_of.size()) {
    throw StructuralError("plan omits " + std::to_string(length_of.size() - seen.size()) +
                          " sequence(s)");
  }
  return total > 0.0 ? padding / total : 0.0;
}

void write_batch_manifest(std::ostream& out, const BatchPlan& plan) {
  for (std::size_t n = 0; n < plan.batches.size(); ++n) {
    out << "batch " << n << ':';
    for (const auto id : plan.batches[n]) {
      out << ' ' << id;
    }
    out << '\n';
  }
}

BatchPlan read_batch_manifest(std::string_view text) {
  BatchPlan plan;
  plan.batch_size = 0;
  std::size_t line = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view row = text.substr(pos, end - pos);
    pos = end + 1;
    ++line;
    if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
    if (row.empty()) continue;

    const auto fail = [&](const char* what) {
      throw ParseError(ParseError::Location::Line, line, what);
    };
    if (row.rfind("batch ", 0) != 0) fail("expected 'batch <n>:'");
    const auto colon = row.find(':');
    if (colon == std::string_view::npos) fail("missing ':'");
    std::size_t index = 0;
    const auto number = row.substr(6, colon - 6);
    const auto [nptr, nec] = std::from_chars(number.data(), number.data() + number.size(), index);
    if (nec != std::errc() || nptr != number.data() + number.size() || index != plan.batches.size()) {
      fail("batch numbers must count up from 0");
    }
    std::vector<std::uint64_t> members;
    std::string_view rest = row.substr(colon + 1);
    while (!rest.empty()) {
      while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
      if (rest.empty()) break;
      std::uint64_t id = 0;
      const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), id);
      if (ec != std::errc()) fail("expected a sequence id");
      rest.remove_prefix(static_cast<std::size_t>(ptr - rest.data()));
      if (!rest.empty() && rest.front() != ' ') fail("expected a sequence id");
      members.push_back(id);
    }
    plan.batch_size = std::max(plan.batch_size, members.size());
    plan.batches.push_back(std::move(members));
  }
  if (plan.batch_size == 0) plan.batch_size = 1;
  return plan;
}

}  // namespace meshtok
