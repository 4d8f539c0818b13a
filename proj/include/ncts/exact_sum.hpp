#pragma once

#include <span>

namespace ncts {

// Correctly rounded sum of finite doubles (Shewchuk's partials, the same
// scheme as Python's math.fsum). The result does not depend on input order,
// so corpus aggregates are bit-identical under any permutation or worker
// split.
double exact_sum(std::span<const double> values);

// exact_sum / size. Throws std::invalid_argument on an empty span.
double exact_mean(std::span<const double> values);

} // namespace ncts
