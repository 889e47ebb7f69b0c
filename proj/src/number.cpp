#include "straightedge/number.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

namespace straightedge {

std::size_t Number::degree() const {
  if (is_real()) return re_.degree();
  return 2 * std::max(re_.degree(), im_.degree());
}

int Number::sign() const { return real().sign(); }

const Real& Number::real() const {
  if (!is_real()) throw NonRealError();
  return re_;
}

Number operator+(const Number& a, const Number& b) { return Number(a.re_ + b.re_, a.im_ + b.im_); }

Number operator-(const Number& a, const Number& b) { return Number(a.re_ - b.re_, a.im_ - b.im_); }

Number operator*(const Number& a, const Number& b) {
  if (a.is_real() && b.is_real()) return Number(a.re_ * b.re_);
  if (b.is_real()) return Number(a.re_ * b.re_, a.im_ * b.re_);
  if (a.is_real()) return Number(a.re_ * b.re_, a.re_ * b.im_);
  return Number(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
}

Number Number::inverse() const {
  if (is_real()) return Number(re_.inverse());
  Real n = re_ * re_ + im_ * im_;
  if (n.is_zero()) throw DivisionByZero();
  Real inv = n.inverse();
  return Number(re_ * inv, -im_ * inv);
}

Number operator/(const Number& a, const Number& b) {
  if (b.is_real()) {
    Real inv = b.re_.inverse();
    return Number(a.re_ * inv, a.im_ * inv);
  }
  return a * b.inverse();
}

Number Number::real_sqrt(std::size_t max_degree) const {
  return Number(real().sqrt(max_degree));
}

Number Number::sqrt(std::size_t max_degree) const {
  if (is_real()) {
    if (re_.sign() >= 0) return Number(re_.sqrt(max_degree));
    return Number(Real(0), (-re_).sqrt(max_degree));
  }
  // sqrt(a + bi) = sqrt((m + a)/2) + i * b / (2 sqrt((m + a)/2)), m = |a + bi|
  Real m = (re_ * re_ + im_ * im_).sqrt(max_degree);
  Real x = ((m + re_) / Real(2)).sqrt(max_degree);
  return Number(x, im_ / (Real(2) * x));
}

std::string Number::to_string() const {
  if (is_real()) return re_.to_string();
  std::string imag = "(" + im_.to_string() + ")*sqrt(-1)";
  if (re_.is_zero()) return imag;
  return re_.to_string() + " + " + imag;
}

std::ostream& operator<<(std::ostream& os, const Number& x) { return os << x.to_string(); }

// ------------------------------------------------------------------ parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t max_degree) : text_(text), max_degree_(max_degree) {}

  Number parse() {
    Number v = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_), pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Number expr() {
    Number v = term();
    for (;;) {
      if (accept('+')) {
        v += term();
      } else if (accept('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }

  Number term() {
    Number v = unary();
    for (;;) {
      if (accept('*')) {
        v *= unary();
      } else if (accept('/')) {
        Number d = unary();
        if (d.is_zero()) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }

  Number unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return primary();
  }

  Number primary() {
    skip_ws();
    if (accept('(')) {
      Number v = expr();
      expect(')');
      return v;
    }
    if (text_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      expect('(');
      Number v = expr();
      expect(')');
      return v.sqrt(max_degree_);
    }
    if (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      return number();
    }
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
  }

  Number number() {
    std::string digits;
    std::size_t frac_digits = 0;
    bool seen_dot = false;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits += c;
        if (seen_dot) ++frac_digits;
      } else if (c == '.' && !seen_dot) {
        seen_dot = true;
      } else {
        break;
      }
      ++pos_;
    }
    if (digits.empty()) fail("malformed number");
    mpz_class num(digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_digits);
    Rational q(num, den);
    q.canonicalize();
    return Number(q);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t max_degree_;
};

}  // namespace

Number parse_number(std::string_view text, std::size_t max_degree) {
  return Parser(text, max_degree).parse();
}

}  // namespace straightedge
