#include "meshtok/vocab.hpp"

#include <string>

#include "meshtok/error.hpp"

namespace meshtok {
namespace {

std::uint32_t cube(int n) {
  const auto u = static_cast<std::uint32_t>(n);
  return u * u * u;
}

}  // namespace

void VocabSpec::validate() const {
  if (a < 1 || b < 1 || c < 1) {
    throw ConfigError("block sizes must be positive");
  }
  // Keeps every id and grid coordinate comfortably inside 32 bits.
  if (a > 1024 || b > 1024 || c > 1024 || static_cast<long long>(a) * b * c > (1 << 20)) {
    throw ConfigError("block sizes are too large");
  }
}

std::uint32_t vocab_size(const VocabSpec& spec) {
  spec.validate();
  return 2 * cube(spec.a) + cube(spec.b) + cube(spec.c);
}

BlockIndex block_index(GridPoint q, const VocabSpec& spec) {
  const int r = spec.resolution();
  for (int axis = 0; axis < 3; ++axis) {
    if (q[axis] < 0 || q[axis] >= r) {
      throw DomainError("grid coordinate " + std::to_string(q[axis]) + " outside [0, " +
                        std::to_string(r - 1) + "]");
    }
  }
  const std::uint32_t a = spec.a;
  const std::uint32_t b = spec.b;
  const std::uint32_t c = spec.c;
  const std::uint32_t bc = b * c;
  const auto x = static_cast<std::uint32_t>(q.x);
  const auto y = static_cast<std::uint32_t>(q.y);
  const auto z = static_cast<std::uint32_t>(q.z);

  BlockIndex out;
  out.i = (x / bc) * a * a + (y / bc) * a + (z / bc);
  out.j = ((x % bc) / c) * b * b + ((y % bc) / c) * b + ((z % bc) / c);
  out.k = (x % c) * c * c + (y % c) * c + (z % c);
  return out;
}

GridPoint block_inverse(BlockIndex index, const VocabSpec& spec) {
  const std::uint32_t a = spec.a;
  const std::uint32_t b = spec.b;
  const std::uint32_t c = spec.c;
  if (index.i >= a * a * a || index.j >= b * b * b || index.k >= c * c * c) {
    throw DomainError("block index out of range");
  }
  // Each level is a three-digit number in its own base, most significant digit = x.
  const std::uint32_t coarse[3] = {index.i / (a * a), (index.i / a) % a, index.i % a};
  const std::uint32_t middle[3] = {index.j / (b * b), (index.j / b) % b, index.j % b};
  const std::uint32_t fine[3] = {index.k / (c * c), (index.k / c) % c, index.k % c};
  std::int32_t axes[3];
  for (int axis = 0; axis < 3; ++axis) {
    axes[axis] = static_cast<std::int32_t>(coarse[axis] * b * c + middle[axis] * c + fine[axis]);
  }
  return {axes[0], axes[1], axes[2]};
}

const char* to_string(TokenClass cls) {
  switch (cls) {
    case TokenClass::I: return "I";
    case TokenClass::CenterI: return "CENTER_I";
    case TokenClass::J: return "J";
    case TokenClass::K: return "K";
  }
  return "?";
}

std::uint32_t class_base(TokenClass cls, const VocabSpec& spec) {
  switch (cls) {
    case TokenClass::I: return 0;
    case TokenClass::CenterI: return cube(spec.a);
    case TokenClass::J: return 2 * cube(spec.a);
    case TokenClass::K: return 2 * cube(spec.a) + cube(spec.b);
  }
  return 0;
}

std::uint32_t class_size(TokenClass cls, const VocabSpec& spec) {
  switch (cls) {
    case TokenClass::I:
    case TokenClass::CenterI: return cube(spec.a);
    case TokenClass::J: return cube(spec.b);
    case TokenClass::K: return cube(spec.c);
  }
  return 0;
}

std::uint32_t token_id(Token token, const VocabSpec& spec) {
  if (token.value >= class_size(token.cls, spec)) {
    throw DomainError(std::string("value ") + std::to_string(token.value) + " does not fit class " +
                      to_string(token.cls));
  }
  return class_base(token.cls, spec) + token.value;
}

Token classify(std::uint32_t id, const VocabSpec& spec) {
  for (const auto cls : {TokenClass::K, TokenClass::J, TokenClass::CenterI, TokenClass::I}) {
    const auto base = class_base(cls, spec);
    if (id >= base) {
      if (id - base >= class_size(cls, spec)) {
        throw DomainError("token id " + std::to_string(id) + " is outside the vocabulary");
      }
      return {cls, id - base};
    }
  }
  throw DomainError("token id " + std::to_string(id) + " is outside the vocabulary");
}

}  // namespace meshtok
