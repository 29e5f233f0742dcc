#pragma once

#include <cstdint>
#include <string>

namespace vppsim {

// VPP coin amounts are fixed-point: 1 coin == 1'000'000 micro-coins.
// All fee, reward and wallet arithmetic is integer so conservation
// checks hold exactly instead of within a float tolerance.
using Coin = std::int64_t;

inline constexpr Coin kCoin = 1'000'000;

constexpr Coin coins(std::int64_t whole) { return whole * kCoin; }

constexpr double coin_to_double(Coin c) { return static_cast<double>(c) / static_cast<double>(kCoin); }

// Nearest micro-coin; ties away from zero. Input must be finite and
// within int64 range after scaling.
Coin coin_from_double(double value);

// Parses "12", "12.5", "-0.000001". Rejects more than 6 fractional
// digits, stray characters, empty input.
Coin coin_parse(const std::string& text);

// Canonical decimal rendering, always with 6 fractional digits so
// report bytes are stable: 12500000 -> "12.500000".
std::string coin_format(Coin c);

} // namespace vppsim
