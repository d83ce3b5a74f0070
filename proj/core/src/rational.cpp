#include "flp/rational.hpp"

#include <cctype>

namespace flp {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Rat parse_fraction(std::string_view text) {
  auto slash = text.find('/');
  std::string num(text.substr(0, slash));
  std::string den(text.substr(slash + 1));
  bool neg = false;
  if (!num.empty() && (num[0] == '+' || num[0] == '-')) {
    neg = num[0] == '-';
    num.erase(0, 1);
  }
  if (!all_digits(num) || !all_digits(den))
    throw NumberFormatError("malformed fraction: " + std::string(text));
  mpz_class n(num, 10), d(den, 10);  // explicit base: leading zeros are not octal
  if (d == 0) throw NumberFormatError("zero denominator: " + std::string(text));
  Rat r(n, d);
  r.canonicalize();
  if (neg) r = -r;
  return r;
}

}  // namespace

Rat rat_from_string(std::string_view text) {
  if (text.empty()) throw NumberFormatError("empty number");
  if (text.find('/') != std::string_view::npos) return parse_fraction(text);

  std::string_view s = text;
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }

  long exp10 = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string_view::npos) {
    std::string etext(s.substr(epos + 1));
    s = s.substr(0, epos);
    if (etext.empty()) throw NumberFormatError("malformed exponent: " + std::string(text));
    bool eneg = false;
    if (etext[0] == '+' || etext[0] == '-') {
      eneg = etext[0] == '-';
      etext.erase(0, 1);
    }
    if (!all_digits(etext) || etext.size() > 6)
      throw NumberFormatError("malformed exponent: " + std::string(text));
    exp10 = std::stol(etext);
    if (eneg) exp10 = -exp10;
  }

  std::string digits;
  long frac_digits = 0;
  auto dot = s.find('.');
  if (dot == std::string_view::npos) {
    digits = std::string(s);
  } else {
    digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
    frac_digits = static_cast<long>(s.size() - dot - 1);
  }
  if (!all_digits(digits)) throw NumberFormatError("malformed number: " + std::string(text));

  mpz_class mantissa(digits, 10);
  long net = exp10 - frac_digits;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(net < 0 ? -net : net));
  Rat r = net >= 0 ? Rat(mantissa * pow10) : Rat(mantissa, pow10);
  r.canonicalize();
  if (neg) r = -r;
  return r;
}

bool rat_has_finite_decimal(const Rat& value) {
  mpz_class den = value.get_den();
  for (int p : {2, 5})
    while (mpz_divisible_ui_p(den.get_mpz_t(), p)) mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), p);
  return den == 1;
}

std::string rat_to_string(const Rat& value) {
  Rat v = value;
  v.canonicalize();
  mpz_class den = v.get_den();
  if (den == 1) return v.get_num().get_str();

  // Count factors of 2 and 5 in the denominator.
  mpz_class rest = den;
  unsigned long twos = 0, fives = 0;
  while (mpz_divisible_ui_p(rest.get_mpz_t(), 2)) {
    mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), 2);
    ++twos;
  }
  while (mpz_divisible_ui_p(rest.get_mpz_t(), 5)) {
    mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), 5);
    ++fives;
  }
  if (rest != 1) return v.get_num().get_str() + "/" + den.get_str();

  unsigned long k = twos > fives ? twos : fives;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, k);
  mpz_class scaled = v.get_num() * (scale / den);  // exact: den | 10^k
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::string s = scaled.get_str();
  if (s.size() <= k) s.insert(0, k + 1 - s.size(), '0');
  s.insert(s.size() - k, ".");
  return (neg ? "-" : "") + s;
}

bool rat_exact_sqrt(const Rat& value, Rat* root) {
  if (value < 0) return false;
  mpz_class num = value.get_num(), den = value.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    if (root) {
      *root = Rat(rn, rd);
      root->canonicalize();
    }
    return true;
  }
  return false;
}

}  // namespace flp
