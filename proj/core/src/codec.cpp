#include "meshtok/codec.hpp"

#include <map>
#include <string>

#include "meshtok/error.hpp"
#include "meshtok/patches.hpp"

namespace meshtok {
namespace {

using Location = ParseError::Location;

class Emitter {
 public:
  Emitter(const VocabSpec& spec, std::vector<std::uint32_t>& out)
      : spec_(spec),
        out_(out),
        center_base_(class_base(TokenClass::CenterI, spec)),
        i_base_(class_base(TokenClass::I, spec)),
        j_base_(class_base(TokenClass::J, spec)),
        k_base_(class_base(TokenClass::K, spec)) {}

  void center(GridPoint q) {
    const BlockIndex b = block_index(q, spec_);
    out_.push_back(center_base_ + b.i);
    out_.push_back(j_base_ + b.j);
    out_.push_back(k_base_ + b.k);
    previous_ = b;
  }

  void ring(GridPoint q) {
    const BlockIndex b = block_index(q, spec_);
    if (b.i != previous_.i) {
      out_.push_back(i_base_ + b.i);
      out_.push_back(j_base_ + b.j);
    } else if (b.j != previous_.j) {
      out_.push_back(j_base_ + b.j);
    }
    out_.push_back(k_base_ + b.k);
    previous_ = b;
  }

 private:
  const VocabSpec& spec_;
  std::vector<std::uint32_t>& out_;
  std::uint32_t center_base_;
  std::uint32_t i_base_;
  std::uint32_t j_base_;
  std::uint32_t k_base_;
  BlockIndex previous_;
};

// Assigns vertex slots in order of first appearance.
class VertexTable {
 public:
  explicit VertexTable(QuantizedMesh& mesh) : mesh_(mesh) {}

  std::uint32_t slot(GridPoint q) {
    const auto [it, inserted] = slots_.emplace(q, static_cast<std::uint32_t>(mesh_.vertices.size()));
    if (inserted) {
      mesh_.vertices.push_back(q);
    }
    return it->second;
  }

 private:
  QuantizedMesh& mesh_;
  std::map<GridPoint, std::uint32_t> slots_;
};

}  // namespace

TokenSequence encode(const QuantizedMesh& qmesh, const VocabSpec& spec,
                     std::vector<PatchSummary>* patches) {
  spec.validate();
  if (qmesh.resolution != spec.resolution()) {
    throw ConfigError("mesh resolution " + std::to_string(qmesh.resolution) +
                      " does not match block sizes (A*B*C = " + std::to_string(spec.resolution()) +
                      ")");
  }
  TokenSequence seq;
  seq.spec = spec;
  seq.face_count = static_cast<std::uint32_t>(qmesh.faces.size());
  if (qmesh.faces.empty()) {
    qmesh.validate();
    return seq;
  }

  const auto fans = build_patches(qmesh);
  if (patches != nullptr) {
    patches->clear();
    patches->reserve(fans.size());
  }
  Emitter emit(spec, seq.ids);
  for (const auto& fan : fans) {
    const std::size_t before = seq.ids.size();
    emit.center(qmesh.vertices[fan.center]);
    for (const auto v : fan.ring) {
      emit.ring(qmesh.vertices[v]);
    }
    const std::size_t used = seq.ids.size() - before;
    const std::size_t n = fan.ring.size();
    if (n < 2 || used < n + 3 || used > 3 * (n + 1)) {
      throw Error("internal: patch with ring size " + std::to_string(n) + " produced " +
                  std::to_string(used) + " tokens");
    }
    if (patches != nullptr) {
      patches->push_back({n, used});
    }
  }
  return seq;
}

QuantizedMesh decode(std::span<const std::uint32_t> ids, const VocabSpec& spec) {
  spec.validate();
  QuantizedMesh mesh;
  mesh.resolution = spec.resolution();
  VertexTable table(mesh);
  const auto size = vocab_size(spec);

  std::size_t pos = 0;
  auto read = [&](std::size_t at) -> Token {
    if (ids[at] >= size) {
      throw DomainError("token " + std::to_string(at) + ": id " + std::to_string(ids[at]) +
                        " is outside the vocabulary of " + std::to_string(size));
    }
    return classify(ids[at], spec);
  };
  auto expect = [&](TokenClass cls, const char* context) -> std::uint32_t {
    if (pos >= ids.size()) {
      throw TruncationError(Location::Token, pos, std::string("stream ends inside ") + context);
    }
    const Token t = read(pos);
    if (t.cls != cls) {
      throw ParseError(Location::Token, pos,
                       std::string("expected ") + to_string(cls) + " in " + context + ", got " +
                           to_string(t.cls));
    }
    ++pos;
    return t.value;
  };

  if (!ids.empty() && read(0).cls != TokenClass::CenterI) {
    throw ParseError(Location::Token, 0, "stream must start with CENTER_I");
  }

  std::vector<std::uint32_t> ring;
  while (pos < ids.size()) {
    const std::size_t patch_start = pos;
    BlockIndex current;
    current.i = expect(TokenClass::CenterI, "patch center");
    current.j = expect(TokenClass::J, "patch center");
    current.k = expect(TokenClass::K, "patch center");
    const std::uint32_t center = table.slot(block_inverse(current, spec));

    ring.clear();
    while (pos < ids.size()) {
      const Token head = read(pos);
      if (head.cls == TokenClass::CenterI) {
        break;
      }
      const std::size_t vertex_start = pos;
      if (head.cls == TokenClass::I) {
        current.i = expect(TokenClass::I, "ring vertex");
        current.j = expect(TokenClass::J, "ring vertex");
      } else if (head.cls == TokenClass::J) {
        current.j = expect(TokenClass::J, "ring vertex");
      }
      current.k = expect(TokenClass::K, "ring vertex");

      const std::uint32_t v = table.slot(block_inverse(current, spec));
      const std::uint32_t previous = ring.empty() ? center : ring.back();
      if (v == previous || v == center) {
        throw ParseError(Location::Token, vertex_start, "ring vertex repeats its neighbor");
      }
      ring.push_back(v);
    }
    if (ring.size() < 2) {
      throw TruncationError(Location::Token, pos,
                            "patch starting at token " + std::to_string(patch_start) +
                                " has fewer than two ring vertices");
    }
    for (std::size_t t = 0; t + 1 < ring.size(); ++t) {
      mesh.faces.push_back({center, ring[t], ring[t + 1]});
    }
  }
  return mesh;
}

QuantizedMesh decode(const TokenSequence& seq) {
  QuantizedMesh mesh = decode(seq.ids, seq.spec);
  if (mesh.faces.size() != seq.face_count) {
    throw StructuralError("stream decodes to " + std::to_string(mesh.faces.size()) +
                          " faces but records " + std::to_string(seq.face_count));
  }
  return mesh;
}

double compression_ratio(const TokenSequence& seq) {
  if (seq.face_count == 0) {
    throw DomainError("compression ratio is undefined for zero faces");
  }
  return static_cast<double>(seq.ids.size()) / (9.0 * static_cast<double>(seq.face_count));
}

std::size_t count_patches(std::span<const std::uint32_t> ids, const VocabSpec& spec) {
  const auto lo = class_base(TokenClass::CenterI, spec);
  const auto hi = lo + class_size(TokenClass::CenterI, spec);
  std::size_t count = 0;
  for (const auto id : ids) {
    if (id >= lo && id < hi) ++count;
  }
  return count;
}

}  // namespace meshtok
