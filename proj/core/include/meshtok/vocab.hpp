#pragma once

#include <cstdint>
#include <string>

#include "meshtok/geometry.hpp"

namespace meshtok {

/// Block side lengths of the three hierarchy levels. The grid resolution is A*B*C.
struct VocabSpec {
  int a = 4;
  int b = 8;
  int c = 16;

  constexpr int resolution() const { return a * b * c; }

  /// Throws ConfigError unless every side length is at least 1.
  void validate() const;

  friend constexpr bool operator==(const VocabSpec&, const VocabSpec&) = default;
};

/// 2*A^3 + B^3 + C^3; 4736 for the defaults.
std::uint32_t vocab_size(const VocabSpec& spec);

/// Offsets of a grid point inside the three nested block levels.
struct BlockIndex {
  std::uint32_t i = 0;  ///< coarse block, [0, A^3)
  std::uint32_t j = 0;  ///< middle block, [0, B^3)
  std::uint32_t k = 0;  ///< fine offset, [0, C^3)

  friend constexpr bool operator==(const BlockIndex&, const BlockIndex&) = default;
};

/// Throws DomainError if any component lies outside [0, r-1].
BlockIndex block_index(GridPoint q, const VocabSpec& spec);

/// Inverse of block_index. Throws DomainError for out-of-range components.
GridPoint block_inverse(BlockIndex b, const VocabSpec& spec);

enum class TokenClass : std::uint8_t { I, CenterI, J, K };

const char* to_string(TokenClass cls);

struct Token {
  TokenClass cls = TokenClass::I;
  std::uint32_t value = 0;

  friend constexpr bool operator==(const Token&, const Token&) = default;
};

/// Id layout: I at 0, CENTER_I at A^3, J at 2*A^3, K at 2*A^3 + B^3.
std::uint32_t class_base(TokenClass cls, const VocabSpec& spec);
std::uint32_t class_size(TokenClass cls, const VocabSpec& spec);

/// Throws DomainError when the value does not fit its class.
std::uint32_t token_id(Token token, const VocabSpec& spec);

/// Throws DomainError when id >= vocab_size(spec).
Token classify(std::uint32_t id, const VocabSpec& spec);

}  // namespace meshtok
