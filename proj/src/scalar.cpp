#include "fol/scalar.hpp"

#include <cctype>

#include "fol/errors.hpp"

namespace fol {

std::string rational_str(const mpq_class& q) { return q.get_str(); }

Scalar& Scalar::operator*=(const Scalar& o) {
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DomainError("division by zero scalar");
  mpq_class n = norm2();
  return Scalar(re_ / n, -im_ / n);
}

std::string Scalar::str() const {
  if (sgn(im_) == 0) return rational_str(re_);
  std::string imag;
  if (im_ == 1)
    imag = "i";
  else if (im_ == -1)
    imag = "-i";
  else
    imag = rational_str(im_) + "*i";
  if (sgn(re_) == 0) return imag;
  if (imag[0] != '-') imag = "+" + imag;
  return rational_str(re_) + imag;
}

namespace {

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

// Reads an optionally signed rational at text[pos]; returns false if none is present.
bool read_rational(const std::string& text, std::size_t& pos, mpq_class& out) {
  std::size_t start = pos;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) negative = text[pos++] == '-';
  std::size_t digits = pos;
  while (pos < text.size() && is_digit(text[pos])) ++pos;
  if (pos == digits) {
    pos = start;
    return false;
  }
  std::string body = text.substr(digits, pos - digits);
  if (pos < text.size() && text[pos] == '/') {
    std::size_t den = ++pos;
    while (pos < text.size() && is_digit(text[pos])) ++pos;
    if (pos == den) throw ParseError(pos, "expected denominator");
    if (text.find_first_not_of('0', den) >= pos) throw ParseError(den, "zero denominator");
    body += "/" + text.substr(den, pos - den);
  }
  out = mpq_class(body);
  out.canonicalize();
  if (negative) out = -out;
  return true;
}

void read_part(const std::string& text, std::size_t& pos, mpq_class& re, mpq_class& im) {
  std::size_t start = pos;
  mpq_class value;
  if (read_rational(text, pos, value)) {
    if (text.compare(pos, 2, "*i") == 0) {
      pos += 2;
      im += value;
    } else {
      re += value;
    }
    return;
  }
  int sign = 1;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) sign = text[pos++] == '-' ? -1 : 1;
  if (pos < text.size() && text[pos] == 'i') {
    ++pos;
    im += sign;
    return;
  }
  throw ParseError(start, "expected a rational or i");
}

}  // namespace

Scalar Scalar::parse(const std::string& text) {
  if (text.empty()) throw ParseError(0, "empty scalar");
  std::size_t pos = 0;
  mpq_class re(0), im(0);
  read_part(text, pos, re, im);
  if (pos < text.size()) read_part(text, pos, re, im);
  if (pos != text.size()) throw ParseError(pos, "trailing characters in scalar");
  return Scalar(re, im);
}

}  // namespace fol
