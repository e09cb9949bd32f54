#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "meshtok/geometry.hpp"
#include "meshtok/vocab.hpp"

namespace meshtok {

struct TokenSequence {
  VocabSpec spec;
  std::uint32_t face_count = 0;
  std::vector<std::uint32_t> ids;

  std::size_t size() const { return ids.size(); }
  Token token(std::size_t position) const { return classify(ids[position], spec); }
};

struct PatchSummary {
  std::size_t ring_size = 0;
  std::size_t token_count = 0;
};

/// Serializes a quantized mesh patch by patch.
///
/// A center is always written as CENTER_I, J, K. Each ring vertex is compared
/// with the vertex written just before it in the same patch: a shared (i, j)
/// emits K only, a shared i emits J, K, anything else emits I, J, K. The
/// mesh resolution must equal spec.resolution(). When `patches` is non-null
/// it receives one summary per emitted patch.
TokenSequence encode(const QuantizedMesh& qmesh, const VocabSpec& spec,
                     std::vector<PatchSummary>* patches = nullptr);

/// Parses `stream := patch*`, `patch := CENTER_I J K vertex vertex+`,
/// `vertex := I J K | J K | K`, expanding each patch back into its fan.
///
/// Vertices are numbered in order of first appearance. Errors carry the token
/// position: ParseError for grammar violations, TruncationError for a patch
/// that ends with fewer than two ring vertices, DomainError for ids outside
/// the vocabulary.
QuantizedMesh decode(std::span<const std::uint32_t> ids, const VocabSpec& spec);

/// decode(seq.ids, seq.spec), additionally checking the recorded face count.
QuantizedMesh decode(const TokenSequence& seq);

/// Token count over 9x the face count. Throws DomainError for zero faces.
double compression_ratio(const TokenSequence& seq);

/// Number of CENTER_I tokens, i.e. patches, in an id stream.
std::size_t count_patches(std::span<const std::uint32_t> ids, const VocabSpec& spec);

}  // namespace meshtok
