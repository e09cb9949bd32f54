#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "meshtok/codec.hpp"

namespace meshtok {

inline constexpr char kDmtkMagic[4] = {'D', 'M', 'T', 'K'};
inline constexpr std::uint8_t kDmtkVersion = 0x01;
/// magic(4) version(1) r(2) A(1) B(1) C(1) faces(4) tokens(4)
inline constexpr std::size_t kDmtkHeaderSize = 18;

/// Little-endian DMTK record. Ids must fit in 16 bits; they are not checked
/// against the vocabulary so window padding ids can be stored.
std::vector<std::uint8_t> to_dmtk(const TokenSequence& seq);

/// Parses one record starting at `offset`, advancing it past the record.
/// Throws ParseError (byte offsets are absolute) on bad magic, version,
/// inconsistent block sizes, or truncation.
TokenSequence read_dmtk_record(std::string_view bytes, std::size_t& offset);

/// Parses a buffer holding exactly one record.
TokenSequence from_dmtk(std::string_view bytes);

/// Parses a buffer of back-to-back records.
std::vector<TokenSequence> read_dmtk_stream(std::string_view bytes);

/// One decimal id per line. The text form carries no header.
void write_token_text(std::ostream& out, std::span<const std::uint32_t> ids);
std::vector<std::uint32_t> read_token_text(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace meshtok
