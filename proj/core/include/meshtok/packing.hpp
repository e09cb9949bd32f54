#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace meshtok {

struct WindowSpec {
  std::size_t length = 9000;
  std::size_t stride = 9000;
  std::uint32_t pad_id = 4736;

  /// Throws ConfigError unless 1 <= stride <= length and pad_id >= vocabulary size.
  void validate(std::uint32_t vocabulary) const;
};

struct Window {
  std::vector<std::uint32_t> ids;  ///< exactly WindowSpec::length entries
  std::size_t valid_length = 0;    ///< ids past this point are pad_id
  std::uint64_t source = 0;
  std::size_t offset = 0;
};

/// Windows start at 0, stride, 2*stride, ... while the offset is inside the
/// sequence; each copies `length` ids and pads the tail. With stride ==
/// length the valid regions tile the input exactly once. An empty sequence
/// yields no windows.
std::vector<Window> split_windows(std::span<const std::uint32_t> ids, std::uint64_t source,
                                  const WindowSpec& spec);

struct SequenceLength {
  std::uint64_t id = 0;
  std::size_t tokens = 0;
};

struct BatchPlan {
  std::vector<std::vector<std::uint64_t>> batches;
  std::size_t batch_size = 1;
};

/// Sorts by length (descending, ties by id), cuts consecutive runs of
/// batch_size into batches and shuffles the batch order with `seed`.
/// Only the last batch in sorted order may be short.
BatchPlan bucket_sequences(std::span<const SequenceLength> lengths, std::size_t batch_size,
                           std::uint64_t seed);

/// Baseline that ignores lengths: shuffles ids with `seed`, then cuts batches.
BatchPlan random_batches(std::span<const SequenceLength> lengths, std::size_t batch_size,
                         std::uint64_t seed);

/// Pad tokens over total tokens when every member of a batch is windowed for
/// ceil(longest member / stride) steps and each step is padded to the widest
/// member window of that step. Throws StructuralError unless the plan names
/// every id in `lengths` exactly once.
double padding_fraction(const BatchPlan& plan, std::span<const SequenceLength> lengths,
                        const WindowSpec& spec);

/// `batch <n>: <id> <id> ...`, one line per batch, n counting from 0.
void write_batch_manifest(std::ostream& out, const BatchPlan& plan);
BatchPlan read_batch_manifest(std::string_view text);

}  // namespace meshtok
