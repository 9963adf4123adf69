#include "g2/profiles/expression.hpp"

#include <cctype>
#include <charconv>
#include <numbers>
#include <string>

#include "g2/error.hpp"

namespace g2 {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Domain& domain) : s_(text), domain_(domain) {}

  Profile parse() {
    auto p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return p.on(domain_);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Profile expr() {
    auto lhs = term();
    for (;;) {
      if (accept('+')) lhs = lhs + term();
      else if (accept('-')) lhs = lhs - term();
      else return lhs;
    }
  }

  Profile term() {
    auto lhs = unary();
    for (;;) {
      if (accept('*')) lhs = lhs * unary();
      else if (accept('/')) lhs = lhs / unary();
      else return lhs;
    }
  }

  Profile unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return primary();
  }

  Profile primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      auto p = expr();
      expect(')');
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  Profile number() {
    double v = 0.0;
    auto [end, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc()) fail("malformed number");
    pos_ = static_cast<std::size_t>(end - s_.data());
    return Profile(v);
  }

  Profile identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    const std::string_view name = s_.substr(start, pos_ - start);
    if (name == "r") return Profile::coordinate();
    if (name == "pi") return Profile(std::numbers::pi);
    if (name == "pow") {
      expect('(');
      auto base = expr();
      expect(',');
      auto e = expr();
      expect(')');
      auto ev = e.constant_value();
      if (!ev) fail("pow exponent must be a constant");
      return pow(base, *ev);
    }
    Profile (*fn)(const Profile&) = nullptr;
    if (name == "sin") fn = &sin;
    else if (name == "cos") fn = &cos;
    else if (name == "exp") fn = &exp;
    else if (name == "atan") fn = &atan;
    if (!fn) {
      pos_ = start;
      fail("unknown identifier '" + std::string(name) + "'");
    }
    expect('(');
    auto arg = expr();
    expect(')');
    return fn(arg);
  }

  std::string_view s_;
  Domain domain_;
  std::size_t pos_ = 0;
};

}  // namespace

Profile parse_expression(std::string_view text, const Domain& domain) { return Parser(text, domain).parse(); }

}  // namespace g2
