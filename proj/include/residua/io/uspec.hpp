#pragma once

#include <cctype>
#include <cmath>
#include <string>

#include "residua/circle/trig.hpp"
#include "residua/common.hpp"

namespace residua::io {

// Mini-language for circle functions on the command line: sums and products
// of numbers, i, exp(i k t), cos(k t) and sin(k t).  Covers every example
// this library runs without dragging in an expression engine.
//
//   "exp(i t)"                "1"            "cos(t)"
//   "(2 + exp(i t)) * exp(-2 i t)"           "0.5*i*sin(3 t)"
class UspecParser {
public:
  static circle::TrigPolynomial parse(const std::string& text) {
    UspecParser p(text);
    auto u = p.parse_sum();
    p.skip_space();
    if (p.pos_ != p.text_.size())
      throw invalid_input("u-spec: trailing input at position " + std::to_string(p.pos_));
    return u.trimmed();
  }

private:
  explicit UspecParser(std::string text) : text_(std::move(text)) {}

  circle::TrigPolynomial parse_sum() {
    auto acc = parse_product();
    for (;;) {
      skip_space();
      if (peek() == '+') {
        ++pos_;
        acc = acc + parse_product();
      } else if (peek() == '-') {
        ++pos_;
        acc = acc - parse_product();
      } else {
        return acc;
      }
    }
  }

  circle::TrigPolynomial parse_product() {
    auto acc = parse_factor();
    for (;;) {
      skip_space();
      if (peek() == '*') {
        ++pos_;
        acc = (acc * parse_factor()).trimmed();
      } else {
        return acc;
      }
    }
  }

  circle::TrigPolynomial parse_factor() {
    skip_space();
    const char c = peek();
    if (c == '(') {
      ++pos_;
      auto inner = parse_sum();
      expect(')');
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return cplx(-1.0) * parse_factor();
    }
    if (c == 'i' && !std::isalpha(peek_at(pos_ + 1))) {
      ++pos_;
      return circle::TrigPolynomial::constant(cplx(0.0, 1.0));
    }
    if (match_word("exp")) return parse_exp();
    if (match_word("cos")) return parse_trig(true);
    if (match_word("sin")) return parse_trig(false);
    if (std::isdigit(c) || c == '.') return circle::TrigPolynomial::constant(parse_number());
    throw invalid_input("u-spec: unexpected character at position " + std::to_string(pos_));
  }

  // exp( [num] [*] i [*] [num] t )  with optional leading sign
  circle::TrigPolynomial parse_exp() {
    expect('(');
    skip_space();
    double sign = 1.0;
    if (peek() == '-') {
      sign = -1.0;
      ++pos_;
    } else if (peek() == '+') {
      ++pos_;
    }
    double pre = 1.0;
    skip_space();
    if (std::isdigit(peek()) || peek() == '.') {
      pre = parse_number();
      skip_optional('*');
    }
    skip_space();
    if (peek() != 'i') throw invalid_input("u-spec: exp argument must be imaginary");
    ++pos_;
    skip_optional('*');
    double post = 1.0;
    skip_space();
    if (std::isdigit(peek()) || peek() == '.') {
      post = parse_number();
      skip_optional('*');
    }
    skip_space();
    if (peek() != 't') throw invalid_input("u-spec: exp argument must involve t");
    ++pos_;
    expect(')');
    const double k = sign * pre * post;
    if (std::abs(k - std::round(k)) > 1e-12)
      throw invalid_input("u-spec: exp(i k t) needs an integer k");
    return circle::TrigPolynomial::mode(static_cast<int>(std::llround(k)));
  }

  circle::TrigPolynomial parse_trig(bool cosine) {
    expect('(');
    skip_space();
    double k = 1.0;
    if (std::isdigit(peek()) || peek() == '.') {
      k = parse_number();
      skip_optional('*');
    }
    skip_space();
    if (peek() != 't') throw invalid_input("u-spec: trig argument must involve t");
    ++pos_;
    expect(')');
    if (std::abs(k - std::round(k)) > 1e-12)
      throw invalid_input("u-spec: cos/sin(k t) needs an integer k");
    const int mode = static_cast<int>(std::llround(k));
    if (cosine)
      return circle::TrigPolynomial::mode(mode, 0.5) + circle::TrigPolynomial::mode(-mode, 0.5);
    return circle::TrigPolynomial::mode(mode, cplx(0.0, -0.5)) +
           circle::TrigPolynomial::mode(-mode, cplx(0.0, 0.5));
  }

  double parse_number() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
            text_[pos_] == 'e' || text_[pos_] == 'E' ||
            ((text_[pos_] == '+' || text_[pos_] == '-') && pos_ > start &&
             (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E'))))
      ++pos_;
    if (start == pos_) throw invalid_input("u-spec: expected a number");
    return std::stod(text_.substr(start, pos_ - start));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void skip_optional(char c) {
    skip_space();
    if (peek() == c) ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char peek_at(std::size_t i) const { return i < text_.size() ? text_[i] : '\0'; }
  void expect(char c) {
    skip_space();
    if (peek() != c)
      throw invalid_input(std::string("u-spec: expected '") + c + "' at position " +
                          std::to_string(pos_));
    ++pos_;
  }
  bool match_word(const char* word) {
    skip_space();
    std::size_t i = pos_;
    for (const char* w = word; *w; ++w, ++i)
      if (peek_at(i) != *w) return false;
    pos_ = i;
    return true;
  }

  std::string text_;
  std::size_t pos_ = 0;
};

inline circle::TrigPolynomial parse_uspec(const std::string& text) {
  return UspecParser::parse(text);
}

}  // namespace residua::io
