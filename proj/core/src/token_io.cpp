#include "meshtok/token_io.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include "meshtok/error.hpp"

namespace meshtok {
namespace {

using Location = ParseError::Location;

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) {
    out.push_back(static_cast<std::uint8_t>((v >> shift) & 0xff));
  }
}

class ByteReader {
 public:
  ByteReader(std::string_view bytes, std::size_t offset) : bytes_(bytes), pos_(offset) {}

  void need(std::size_t count, const char* what) const {
    if (bytes_.size() - pos_ < count) {
      throw TruncationError(Location::Byte, bytes_.size(),
                            std::string("truncated ") + what + ": needed " +
                                std::to_string(count) + " bytes at offset " + std::to_string(pos_));
    }
  }

  std::uint8_t u8() { return static_cast<std::uint8_t>(bytes_[pos_++]); }

  std::uint16_t u16() {
    const std::uint16_t lo = u8();
    const std::uint16_t hi = u8();
    return static_cast<std::uint16_t>(lo | (hi << 8));
  }

  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int shift = 0; shift < 32; shift += 8) {
      v |= static_cast<std::uint32_t>(u8()) << shift;
    }
    return v;
  }

  std::size_t position() const { return pos_; }

 private:
  std::string_view bytes_;
  std::size_t pos_;
};

}  // namespace

std::vector<std::uint8_t> to_dmtk(const TokenSequence& seq) {
  const int r = seq.spec.resolution();
  if (r > 0xffff || seq.spec.a > 0xff || seq.spec.b > 0xff || seq.spec.c > 0xff) {
    throw DomainError("block sizes do not fit the DMTK header");
  }
  if (seq.ids.size() > UINT32_MAX) {
    throw DomainError("sequence too long for DMTK");
  }
  std::vector<std::uint8_t> out;
  out.reserve(kDmtkHeaderSize + 2 * seq.ids.size());
  out.insert(out.end(), std::begin(kDmtkMagic), std::end(kDmtkMagic));
  out.push_back(kDmtkVersion);
  put_u16(out, static_cast<std::uint16_t>(r));
  out.push_back(static_cast<std::uint8_t>(seq.spec.a));
  out.push_back(static_cast<std::uint8_t>(seq.spec.b));
  out.push_back(static_cast<std::uint8_t>(seq.spec.c));
  put_u32(out, seq.face_count);
  put_u32(out, static_cast<std::uint32_t>(seq.ids.size()));
  for (const auto id : seq.ids) {
    if (id > 0xffff) {
      throw DomainError("token id " + std::to_string(id) + " does not fit in 16 bits");
    }
    put_u16(out, static_cast<std::uint16_t>(id));
  }
  return out;
}

TokenSequence read_dmtk_record(std::string_view bytes, std::size_t& offset) {
  ByteReader in(bytes, offset);
  in.need(kDmtkHeaderSize, "DMTK header");
  if (std::memcmp(bytes.data() + offset, kDmtkMagic, 4) != 0) {
    throw ParseError(Location::Byte, offset, "bad magic, expected DMTK");
  }
  for (int n = 0; n < 4; ++n) in.u8();
  const std::size_t version_at = in.position();
  if (const auto version = in.u8(); version != kDmtkVersion) {
    throw ParseError(Location::Byte, version_at, "unsupported DMTK version " + std::to_string(version));
  }
  const std::size_t spec_at = in.position();
  const int r = in.u16();
  TokenSequence seq;
  seq.spec.a = in.u8();
  seq.spec.b = in.u8();
  seq.spec.c = in.u8();
  if (seq.spec.a == 0 || seq.spec.b == 0 || seq.spec.c == 0 || seq.spec.resolution() != r) {
    throw ParseError(Location::Byte, spec_at, "resolution " + std::to_string(r) +
                                                  " is not the product of the block sizes");
  }
  seq.face_count = in.u32();
  const std::uint32_t count = in.u32();
  in.need(2 * static_cast<std::size_t>(count), "token payload");
  seq.ids.resize(count);
  for (auto& id : seq.ids) {
    id = in.u16();
  }
  offset = in.position();
  return seq;
}

TokenSequence from_dmtk(std::string_view bytes) {
  std::size_t offset = 0;
  TokenSequence seq = read_dmtk_record(bytes, offset);
  if (offset != bytes.size()) {
    throw ParseError(Location::Byte, offset, "trailing bytes after DMTK record");
  }
  return seq;
}

std::vector<TokenSequence> read_dmtk_stream(std::string_view bytes) {
  std::vector<TokenSequence> out;
  std::size_t offset = 0;
  while (offset < bytes.size()) {
    out.push_back(read_dmtk_record(bytes, offset));
  }
  return out;
}

void write_token_text(std::ostream& out, std::span<const std::uint32_t> ids) {
  for (const auto id : ids) {
    out << id << '\n';
  }
}

std::vector<std::uint32_t> read_token_text(std::string_view text) {
  std::vector<std::uint32_t> ids;
  std::size_t line = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view row = text.substr(pos, end - pos);
    pos = end + 1;
    ++line;
    while (!row.empty() && (row.back() == '\r' || row.back() == ' ' || row.back() == '\t')) {
      row.remove_suffix(1);
    }
    while (!row.empty() && (row.front() == ' ' || row.front() == '\t')) {
      row.remove_prefix(1);
    }
    if (row.empty()) continue;
    std::uint32_t id = 0;
    const auto [ptr, ec] = std::from_chars(row.data(), row.data() + row.size(), id);
    if (ec != std::errc() || ptr != row.data() + row.size()) {
      throw ParseError(Location::Line, line, "expected a token id, got '" + std::string(row) + "'");
    }
    ids.push_back(id);
  }
  return ids;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write " + path.string());
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw Error("write failed: " + path.string());
  }
}

}  // namespace meshtok
