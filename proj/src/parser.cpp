#include "milnor/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace milnor {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Parser {
 public:
  Parser(std::string_view text, RingPtr ring) : text_(text), ring_(std::move(ring)) {}

  Polynomial run() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    Polynomial p = expression();
    skip_space();
    if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return p;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expression() {
    Polynomial acc = term();
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (accept('*')) acc = acc * unary();
    return acc;
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (accept('^')) {
      skip_space();
      const std::size_t start = pos_;
      if (pos_ >= text_.size() || !is_digit(text_[pos_]))
        throw ParseError("exponent must be a non-negative integer", pos_);
      Integer e = digits();
      if (e > 4096) throw ParseError("exponent too large", start);
      base = base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  Integer digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  Polynomial atom() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expression();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (is_digit(c)) {
      Rational value(digits());
      // A literal p/q: the slash must be followed directly by digits.
      const std::size_t save = pos_;
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        skip_space();
        if (pos_ >= text_.size() || !is_digit(text_[pos_]))
          throw ParseError("expected denominator after '/'", pos_);
        const std::size_t den_pos = pos_;
        Integer den = digits();
        if (den == 0) throw ParseError("zero denominator", den_pos);
        value /= Rational(den);
        value.canonicalize();
      } else {
        pos_ = save;
      }
      return Polynomial(ring_, value);
    }
    if (is_ident_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      const auto& names = ring_->names;
      auto it = std::find(names.begin(), names.end(), name);
      if (it == names.end()) throw ParseError("unknown variable '" + name + "'", start);
      return Polynomial::variable(ring_, static_cast<std::size_t>(it - names.begin()));
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view text_;
  RingPtr ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse(std::string_view text, const RingPtr& ring) { return Parser(text, ring).run(); }

Polynomial parse(std::string_view text, const std::vector<std::string>& variables) {
  return parse(text, make_ring(variables));
}

std::vector<std::string> identifiers(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (is_ident_start(text[i]) && (i == 0 || !is_ident_char(text[i - 1]))) {
      const std::size_t start = i;
      while (i < text.size() && is_ident_char(text[i])) ++i;
      std::string name(text.substr(start, i - start));
      if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(std::move(name));
    } else {
      ++i;
    }
  }
  return out;
}

std::vector<std::string> infer_variables(std::string_view text) {
  std::vector<std::string> ids = identifiers(text);
  static const std::vector<std::string> standard = {"x", "y", "z", "w"};
  bool all_standard = !ids.empty();
  std::size_t highest = 0;
  for (const auto& id : ids) {
    auto it = std::find(standard.begin(), standard.end(), id);
    if (it == standard.end()) {
      all_standard = false;
      break;
    }
    highest = std::max(highest, static_cast<std::size_t>(it - standard.begin()));
  }
  if (ids.empty()) return {"x"};
  if (all_standard) return {standard.begin(), standard.begin() + static_cast<long>(highest) + 1};

  // Indexed names like x1, x2, ... sorted by their numeric suffix.
  auto split = [](const std::string& s) {
    std::size_t k = s.size();
    while (k > 0 && is_digit(s[k - 1])) --k;
    return std::pair<std::string, long>(s.substr(0, k), k < s.size() ? std::stol(s.substr(k)) : -1);
  };
  std::sort(ids.begin(), ids.end(), [&](const std::string& a, const std::string& b) {
    auto [pa, ia] = split(a);
    auto [pb, ib] = split(b);
    if (pa != pb) return pa < pb;
    return ia < ib;
  });
  return ids;
}

}  // namespace milnor
