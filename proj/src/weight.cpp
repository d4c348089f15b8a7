#include "maxtsp/weight.hpp"

#include <cctype>
#include <stdexcept>

namespace maxtsp {

using boost::multiprecision::cpp_int;

Weight parse_decimal(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  cpp_int numerator = 0;
  cpp_int denominator = 1;
  bool any_digit = false;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '.') {
      if (seen_point) throw std::invalid_argument("malformed number: " + std::string(text));
      seen_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw std::invalid_argument("malformed number: " + std::string(text));
    }
    any_digit = true;
    numerator = numerator * 10 + (ch - '0');
    if (seen_point) denominator *= 10;
  }
  if (!any_digit) throw std::invalid_argument("malformed number: " + std::string(text));
  Weight value(numerator, denominator);
  return negative ? Weight(-value) : value;
}

std::string to_decimal_string(const Weight& w) {
  cpp_int num = boost::multiprecision::numerator(w);
  cpp_int den = boost::multiprecision::denominator(w);
  // Only 2^a 5^b denominators have a finite decimal expansion.
  cpp_int rest = den;
  int twos = 0;
  int fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) return num.str() + "/" + den.str();

  const int digits = std::max(twos, fives);
  cpp_int pow10 = 1;
  for (int k = 0; k < digits; ++k) pow10 *= 10;
  const bool negative = num < 0;
  if (negative) num = -num;
  cpp_int scaled = num * (pow10 / den);
  std::string int_part = cpp_int(scaled / pow10).str();
  std::string frac = cpp_int(scaled % pow10).str();
  if (digits > 0) {
    frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
  } else {
    frac.clear();
  }
  std::string out = negative ? "-" : "";
  out += int_part;
  if (!frac.empty()) out += "." + frac;
  return out;
}

double to_double(const Weight& w) { return w.convert_to<double>(); }

ScaledWeights scale_to_integers(std::span<const Weight> weights, std::int64_t extra_factor,
                                int headroom_bits) {
  cpp_int lcm_den = 1;
  for (const auto& w : weights) {
    lcm_den = boost::multiprecision::lcm(lcm_den, boost::multiprecision::denominator(w));
  }
  lcm_den *= extra_factor;
  const cpp_int limit = cpp_int(1) << (62 - headroom_bits);
  ScaledWeights out;
  out.scale = Weight(lcm_den);
  out.values.reserve(weights.size());
  for (const auto& w : weights) {
    cpp_int v = boost::multiprecision::numerator(w) * (lcm_den / boost::multiprecision::denominator(w));
    if (v >= limit || v <= -limit) throw std::overflow_error("weights too large for integer scaling");
    out.values.push_back(static_cast<std::int64_t>(v));
  }
  return out;
}

}  // namespace maxtsp
