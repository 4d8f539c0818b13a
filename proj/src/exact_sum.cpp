#include "ncts/exact_sum.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace ncts {

double exact_sum(std::span<const double> values)
{
    std::vector<double> partials;
    for (double x : values) {
        std::size_t used = 0;
        for (double y : partials) {
            if (std::fabs(x) < std::fabs(y))
                std::swap(x, y);
            const double hi = x + y;
            const double lo = y - (hi - x);
            if (lo != 0.0)
                partials[used++] = lo;
            x = hi;
        }
        partials.resize(used);
        partials.push_back(x);
    }

    if (partials.empty())
        return 0.0;

    // Sum partials from the top, then fix up the half-way rounding case.
    std::size_t n = partials.size();
    double hi = partials[--n];
    double lo = 0.0;
    while (n > 0) {
        const double x = hi;
        const double y = partials[--n];
        hi = x + y;
        const double yr = hi - x;
        lo = y - yr;
        if (lo != 0.0)
            break;
    }
    if (n > 0 && ((lo < 0.0 && partials[n - 1] < 0.0) || (lo > 0.0 && partials[n - 1] > 0.0))) {
        const double y = lo * 2.0;
        const double x = hi + y;
        const double yr = x - hi;
        if (y == yr)
            hi = x;
    }
    return hi;
}

double exact_mean(std::span<const double> values)
{
    if (values.empty())
        throw std::invalid_argument("mean of an empty sequence");
    return exact_sum(values) / static_cast<double>(values.size());
}

} // namespace ncts
