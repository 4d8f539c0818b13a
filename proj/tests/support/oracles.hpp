#pragma once

// Test-only reference computations. Nothing here calls into the library's
// metric or scoring code; they are written from the definitions directly so
// they can check the implementation.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace ncts::testing {

using Gram = std::vector<std::string>;

inline std::vector<Gram> all_windows(const std::vector<std::string>& tokens, int n)
{
    std::vector<Gram> out;
    for (int i = 0; i + n <= static_cast<int>(tokens.size()); ++i)
        out.emplace_back(tokens.begin() + i, tokens.begin() + i + n);
    return out;
}

inline long occurrences(const std::vector<Gram>& bag, const Gram& g)
{
    return static_cast<long>(std::count(bag.begin(), bag.end(), g));
}

inline std::vector<Gram> distinct(std::vector<Gram> bag)
{
    std::sort(bag.begin(), bag.end());
    bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
    return bag;
}

inline bool contains(const std::vector<Gram>& bag, const Gram& g)
{
    return std::find(bag.begin(), bag.end(), g) != bag.end();
}

inline double frac_or_one(double num, double den) { return den == 0 ? 1.0 : num / den; }

inline double f1(double p, double r) { return p + r == 0 ? 0.0 : 2 * p * r / (p + r); }

struct OracleSari {
    double keep[4];
    double del[4];
    double add[4];
    double final;
};

// Brute force over explicit n-gram lists: every multiset operation is done
// per distinct gram by counting occurrences with linear scans.
inline OracleSari brute_force_sari(const std::vector<std::string>& src,
                                   const std::vector<std::string>& out,
                                   const std::vector<std::vector<std::string>>& refs)
{
    OracleSari result{};
    const long r = static_cast<long>(refs.size());
    double acc = 0;
    for (int n = 1; n <= 4; ++n) {
        const auto S = all_windows(src, n);
        const auto O = all_windows(out, n);
        std::vector<Gram> R;
        for (const auto& ref : refs) {
            auto w = all_windows(ref, n);
            R.insert(R.end(), w.begin(), w.end());
        }
        std::vector<Gram> universe = S;
        universe.insert(universe.end(), O.begin(), O.end());
        universe.insert(universe.end(), R.begin(), R.end());
        universe = distinct(universe);

        long k = 0, kg = 0, ka = 0, d = 0, dg = 0;
        for (const auto& g : universe) {
            const long cs = r * occurrences(S, g);
            const long co = r * occurrences(O, g);
            const long cr = occurrences(R, g);
            const long kk = std::min(cs, co);
            k += kk;
            kg += std::min(kk, cr);
            ka += std::min(cs, cr);
            const long dd = cs > co ? cs - co : 0;
            d += dd;
            dg += std::min(dd, cs > cr ? cs - cr : 0);
        }
        long a = 0, ag = 0, aa = 0;
        for (const auto& g : distinct(O))
            if (!contains(S, g)) {
                ++a;
                if (contains(R, g))
                    ++ag;
            }
        for (const auto& g : distinct(R))
            if (!contains(S, g))
                ++aa;

        const double keep = f1(frac_or_one(kg, k), frac_or_one(kg, ka));
        const double del = frac_or_one(dg, d);
        const double add = f1(frac_or_one(ag, a), frac_or_one(ag, aa));
        result.keep[n - 1] = keep;
        result.del[n - 1] = del;
        result.add[n - 1] = add;
        acc += (keep + del + add) / 3.0;
    }
    result.final = 100.0 * acc / 4.0;
    return result;
}

// Extended-precision left fold, used to check log-prob aggregation.
inline double long_double_sum(const std::vector<double>& xs)
{
    long double s = 0;
    for (double x : xs)
        s += x;
    return static_cast<double>(s);
}

// Noisy-channel score written out term by term.
inline double brute_force_score(double direct, double channel, const std::vector<double>& lm,
                                std::size_t n, double l1, double l2, double l3, double l4)
{
    return l1 * direct + l2 * channel + l3 * long_double_sum(lm) + l4 * static_cast<double>(n);
}

} // namespace ncts::testing
