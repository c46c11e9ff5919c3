#include "hubbard/angle.hpp"

#include <charconv>

namespace hubbard {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size())
        throw std::invalid_argument("malformed angle '" + std::string(whole) + "'");
    return v;
}

} // namespace

Rational Angle::parse_gap(std::string_view text) {
    auto slash = text.find('/');
    std::int64_t num = 0, den = 1;
    if (slash == std::string_view::npos) {
        num = parse_int(text, text);
    } else {
        num = parse_int(text.substr(0, slash), text);
        den = parse_int(text.substr(slash + 1), text);
        if (den <= 0)
            throw std::invalid_argument("malformed angle '" + std::string(text) + "'");
        if (std::gcd(num, den) != 1)
            throw std::invalid_argument("angle '" + std::string(text) + "' is not in lowest terms");
    }
    Rational r(num, den);
    if (r < Rational(0) || r > Rational(1))
        throw std::invalid_argument("angle out of range: '" + std::string(text) + "'");
    return r;
}

} // namespace hubbard
