#pragma once

#include <string>

namespace ncts {

// Shortest decimal string that parses back to exactly `value`.
std::string format_shortest(double value);

// Fixed-point rendering with `decimals` digits; "-0.00" style results are
// normalized to positive zero.
std::string format_fixed(double value, int decimals);

// Table-style gain: one decimal with an explicit sign, e.g. "+2.6", "-0.7".
// Values that round to zero render as "+0.0".
std::string format_signed_delta(double value);

} // namespace ncts
