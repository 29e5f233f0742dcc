#include "vppsim/coin.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace vppsim {

Coin coin_from_double(double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("coin_from_double: non-finite value");
    double scaled = value * static_cast<double>(kCoin);
    double rounded = std::round(scaled);
    if (rounded > 9.2e18 || rounded < -9.2e18) throw std::invalid_argument("coin_from_double: out of range");
    return static_cast<Coin>(rounded);
}

Coin coin_parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("coin_parse: empty");
    std::size_t i = 0;
    bool neg = false;
    if (text[i] == '+' || text[i] == '-') {
        neg = text[i] == '-';
        ++i;
    }
    if (i >= text.size()) throw std::invalid_argument("coin_parse: no digits");
    std::int64_t whole = 0;
    bool saw_digit = false;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
        saw_digit = true;
        whole = whole * 10 + (text[i] - '0');
        if (whole > 9'000'000'000'000LL) throw std::invalid_argument("coin_parse: too large");
    }
    std::int64_t frac = 0;
    int frac_digits = 0;
    if (i < text.size() && text[i] == '.') {
        ++i;
        for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
            saw_digit = true;
            if (++frac_digits > 6) throw std::invalid_argument("coin_parse: more than 6 fractional digits");
            frac = frac * 10 + (text[i] - '0');
        }
    }
    if (!saw_digit || i != text.size()) throw std::invalid_argument("coin_parse: bad format: " + text);
    while (frac_digits < 6) {
        frac *= 10;
        ++frac_digits;
    }
    Coin magnitude = whole * kCoin + frac;
    return neg ? -magnitude : magnitude;
}

std::string coin_format(Coin c) {
    Coin abs = c < 0 ? -c : c;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%s%lld.%06lld", c < 0 ? "-" : "",
                  static_cast<long long>(abs / kCoin), static_cast<long long>(abs % kCoin));
    return buf;
}

} // namespace vppsim
