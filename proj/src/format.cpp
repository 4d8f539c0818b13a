#include "ncts/format.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace ncts {

std::string format_shortest(double value)
{
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc())
        throw std::runtime_error("to_chars failed");
    return std::string(buf.data(), ptr);
}

std::string format_fixed(double value, int decimals)
{
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                   std::chars_format::fixed, decimals);
    if (ec != std::errc())
        throw std::runtime_error("to_chars failed");
    std::string out(buf.data(), ptr);
    if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos)
        out.erase(0, 1);
    return out;
}

std::string format_signed_delta(double value)
{
    std::string body = format_fixed(value, 1);
    if (body.front() == '-')
        return body;
    return "+" + body;
}

} // namespace ncts
