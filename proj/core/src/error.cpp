#include "meshtok/error.hpp"

namespace meshtok {
namespace {

std::string describe(ParseError::Location kind, std::size_t where, const std::string& what) {
  switch (kind) {
    case ParseError::Location::Line:
      return "line " + std::to_string(where) + ": " + what;
    case ParseError::Location::Token:
      return "token " + std::to_string(where) + ": " + what;
    case ParseError::Location::Byte:
      return "byte " + std::to_string(where) + ": " + what;
  }
  return what;
}

}  // namespace

ParseError::ParseError(Location kind, std::size_t where, const std::string& what)
    : Error(describe(kind, where, what)), kind_(kind), where_(where) {}

}  // namespace meshtok
