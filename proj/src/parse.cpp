#include "padlift/parse.hpp"

#include <cctype>
#include <sstream>

namespace padlift {

namespace {

class Parser {
public:
  explicit Parser(const std::string& s) : s_(s) {}

  IntPolynomial parse() {
    IntPolynomial p = expr();
    skip_ws();
    if (pos_ != s_.size()) error("trailing input");
    return p;
  }

private:
  [[noreturn]] void error(const std::string& what) {
    std::ostringstream os;
    os << "polynomial parse error at position " << pos_ << ": " << what;
    fail(ErrorCode::InvalidInput, os.str());
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  IntPolynomial expr() {
    IntPolynomial acc = term();
    for (;;) {
      if (eat('+'))
        acc = acc + term();
      else if (eat('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  IntPolynomial term() {
    IntPolynomial acc = unary();
    while (eat('*')) acc = acc * unary();
    return acc;
  }

  IntPolynomial unary() {
    if (eat('-'))
      return IntPolynomial::zero() - unary();
    return power();
  }

  IntPolynomial power() {
    IntPolynomial base = primary();
    if (!eat('^')) return base;
    long e = integer_literal();
    IntPolynomial acc = IntPolynomial::constant(1);
    for (long i = 0; i < e; ++i) acc = acc * base;
    return acc;
  }

  IntPolynomial primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      IntPolynomial p = expr();
      if (!eat(')')) error("expected ')'");
      return p;
    }
    if (c == 'z') {
      ++pos_;
      return IntPolynomial::identity();
    }
    if (std::isdigit((unsigned char)c))
      return IntPolynomial::constant(big_integer_literal());
    error("expected integer, z, or '('");
  }

  long integer_literal() {
    BigInt v = big_integer_literal();
    if (v > 1000) error("exponent too large");
    return (long)v;
  }

  BigInt big_integer_literal() {
    skip_ws();
    if (pos_ >= s_.size() || !std::isdigit((unsigned char)s_[pos_]))
      error("expected integer");
    BigInt v = 0;
    while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_]))
      v = v * 10 + (s_[pos_++] - '0');
    return v;
  }

  const std::string& s_;
  size_t pos_ = 0;
};

} // namespace

IntPolynomial parse_polynomial(const std::string& text) {
  return Parser(text).parse();
}

} // namespace padlift
