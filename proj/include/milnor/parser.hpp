#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "milnor/polynomial.hpp"

namespace milnor {

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parse `text` over the given variables.
///
/// Grammar: `+ - * ^` with the usual precedence, parentheses, unary minus,
/// integer and `p/q` literals, identifiers `[a-zA-Z][a-zA-Z0-9_]*`.
Polynomial parse(std::string_view text, const std::vector<std::string>& variables);
Polynomial parse(std::string_view text, const RingPtr& ring);

/// Identifiers appearing in `text`, in order of first appearance.
std::vector<std::string> identifiers(std::string_view text);

/// Variable list guessed from the identifiers of `text`: a prefix of
/// x,y,z,w when only those occur, indexed names sorted by index, otherwise
/// alphabetical.
std::vector<std::string> infer_variables(std::string_view text);

}  // namespace milnor
