#include "coxglue/scalar_io.hpp"

#include <cctype>
#include <sstream>

namespace coxglue {

namespace {

// Replaces unicode minus (U+2212) with '-' and drops whitespace.
std::string normalize(const std::string& text) {
  std::string out;
  for (size_t i = 0; i < text.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) continue;
    if (c == 0xE2 && i + 2 < text.size() &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 &&
        static_cast<unsigned char>(text[i + 2]) == 0x92) {
      out += '-';
      i += 2;
      continue;
    }
    out += text[i];
  }
  return out;
}

struct Cursor {
  const std::string& s;
  size_t i = 0;
  bool done() const { return i >= s.size(); }
  char peek() const { return done() ? '\0' : s[i]; }
  char take() { return s[i++]; }
};

Int parse_int(Cursor& c) {
  bool neg = false;
  if (c.peek() == '+' || c.peek() == '-') neg = c.take() == '-';
  require(std::isdigit(static_cast<unsigned char>(c.peek())), "ParseError",
          "expected digits in scalar literal");
  Int v(0);
  while (std::isdigit(static_cast<unsigned char>(c.peek()))) v = v * 10 + (c.take() - '0');
  return neg ? -v : v;
}

}  // namespace

LaurentPoly parse_laurent(const std::string& text) {
  const std::string s = normalize(text);
  require(!s.empty(), "ParseError", "empty scalar literal");
  Cursor c{s};
  LaurentPoly poly;
  bool first = true;
  while (!c.done()) {
    Rat coeff(1);
    int sign = 1;
    if (c.peek() == '+' || c.peek() == '-') {
      sign = c.take() == '-' ? -1 : 1;
    } else {
      require(first, "ParseError", "terms must be joined by + or -");
    }
    first = false;
    bool saw_number = false;
    if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
      Int num = parse_int(c);
      Int den(1);
      if (c.peek() == '/') {
        c.take();
        den = parse_int(c);
      }
      coeff = make_rat(num, den);
      saw_number = true;
    }
    if (c.peek() == '*') c.take();
    int exp = 0;
    if (c.peek() == 'u') {
      c.take();
      exp = 1;
      if (c.peek() == '^') {
        c.take();
        Int e = parse_int(c);
        require(e >= -1000000 && e <= 1000000, "ParseError", "exponent out of range");
        exp = static_cast<int>(e);
      }
    } else {
      require(saw_number, "ParseError", "term has neither coefficient nor u");
    }
    poly += LaurentPoly::u(exp, Rat(sign) * coeff);
  }
  return poly;
}

Rat parse_rational(const std::string& text) {
  LaurentPoly p = parse_laurent(text);
  require(p.is_constant(), "ParseError", "expected a rational, got a polynomial");
  return p.constant_value();
}

Rat to_rational(const LaurentPoly& p) {
  require(p.is_constant(), "KindMismatch", "scalar is not a rational");
  return p.constant_value();
}

Fp to_prime_field(const LaurentPoly& p, std::int64_t prime) {
  require(p.is_constant(), "KindMismatch", "scalar is not a residue");
  Rat q = p.constant_value();
  Int den = rat_den(q) % prime;
  require(den != 0, "DivisionByZero", "denominator divisible by p");
  Fp d(static_cast<std::int64_t>(den), prime);
  Fp n(static_cast<std::int64_t>(rat_num(q) % prime), prime);
  return n / d;
}

RatFunc to_rational_function(const LaurentPoly& p) { return RatFunc(p); }

std::string rat_str(const Rat& q) {
  std::ostringstream out;
  out << rat_num(q);
  if (rat_den(q) != 1) out << "/" << rat_den(q);
  return out.str();
}

}  // namespace coxglue
