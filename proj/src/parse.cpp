#include "fol/parse.hpp"

#include <cctype>

#include "fol/errors.hpp"

namespace fol {

namespace {

class Parser {
 public:
  Parser(const std::string& text, int trunc) : text_(text), trunc_(trunc) {}

  VectorField field() {
    expect('[');
    MSeries f = expr();
    expect(',');
    MSeries g = expr();
    expect(',');
    MSeries h = expr();
    expect(']');
    finish();
    return {f, g, h};
  }

  MSeries series() {
    MSeries s = expr();
    finish();
    return s;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void finish() {
    if (peek() != '\0') fail("unexpected trailing input");
  }

  [[noreturn]] void fail(const std::string& msg) {
    std::string found = pos_ < text_.size() ? std::string("'") + text_[pos_] + "'" : "end of input";
    throw ParseError(pos_, msg + ", found " + found);
  }

  MSeries expr() {
    MSeries acc = term();
    for (;;) {
      char c = peek();
      if (c == '+') {
        ++pos_;
        acc += term();
      } else if (c == '-') {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  static bool starts_atom(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == 'x' || c == 'y' || c == 'z' ||
           c == 'i';
  }

  MSeries term() {
    MSeries acc = unary();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * unary();
      } else if (c == '/') {
        std::size_t at = ++pos_;
        MSeries d = unary();
        if (d.size() != 1 || degree(d.terms().begin()->first) != 0) {
          pos_ = at;
          fail("division is only allowed by a nonzero constant");
        }
        acc *= d.constant_term().inverse();
      } else if (starts_atom(c)) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  MSeries unary() {
    char c = peek();
    if (c == '-') {
      ++pos_;
      return -unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  MSeries power() {
    MSeries base = atom();
    if (peek() == '^') {
      ++pos_;
      skip();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a non-negative integer exponent");
      if (pos_ - start > 4) {
        pos_ = start;
        fail("exponent too large");
      }
      base = fol::power(base, std::stoi(text_.substr(start, pos_ - start)));
    }
    return base;
  }

  MSeries atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      MSeries inner = expr();
      expect(')');
      return inner;
    }
    if (c == 'x' || c == 'y' || c == 'z') {
      ++pos_;
      return MSeries::variable(static_cast<Var>(c - 'x'), trunc_);
    }
    if (c == 'i') {
      ++pos_;
      return MSeries::constant(Scalar::i(), trunc_);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return MSeries::constant(Scalar(mpq_class(text_.substr(start, pos_ - start))), trunc_);
    }
    fail("expected a number, variable, i or '('");
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int trunc_;
};

}  // namespace

MSeries parse_series(const std::string& text, int trunc) { return Parser(text, trunc).series(); }

VectorField parse_field(const std::string& text, int trunc) { return Parser(text, trunc).field(); }

}  // namespace fol
