#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace maxtsp {

/// Exact edge weight. Gadget weights carry halves and quarters of input
/// weights, so every stage of the pipeline works over the rationals.
using Weight = boost::multiprecision::cpp_rational;

/// Parses a nonnegative or negative decimal literal ("12", "-0.25", "3.")
/// into an exact rational. Exponent notation is not accepted.
/// Throws std::invalid_argument on malformed input.
Weight parse_decimal(std::string_view text);

/// Exact decimal rendering when the denominator divides a power of ten,
/// otherwise "p/q". Trailing zeros are trimmed.
std::string to_decimal_string(const Weight& w);

/// Nearest double, for display and ratios only.
double to_double(const Weight& w);

/// Scales a batch of rationals by the least common denominator (times
/// `extra_factor`) so they become int64 values. Throws std::overflow_error if
/// any scaled value leaves the int64 range by more than `headroom` bits.
struct ScaledWeights {
  std::vector<std::int64_t> values;
  Weight scale;  // value_i == w_i * scale
};
ScaledWeights scale_to_integers(std::span<const Weight> weights,
                                std::int64_t extra_factor = 1,
                                int headroom_bits = 12);

}  // namespace maxtsp
