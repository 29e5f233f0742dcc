#include "vppsim/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace vppsim {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

RngStream::RngStream(std::uint64_t master_seed, std::string_view stream_name, std::uint64_t index) {
    std::uint64_t s = master_seed;
    std::uint64_t a = splitmix64(s);
    s ^= fnv1a64(stream_name);
    std::uint64_t b = splitmix64(s);
    s ^= index * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL;
    std::uint64_t c = splitmix64(s);
    engine_.seed(a ^ (b + (c << 1)));
}

double RngStream::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_range(double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("uniform_range: lo must be < hi");
    return lo + (hi - lo) * uniform01();
}

std::uint64_t RngStream::uniform_below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_below: n must be > 0");
    // rejection sampling over a power-of-two envelope keeps the draw unbiased
    std::uint64_t mask = n - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
        std::uint64_t v = engine_() & mask;
        if (v < n) return v;
    }
}

std::int64_t RngStream::uniform_int(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("uniform_int: lo must be <= hi");
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_()); // full 64-bit range
    return lo + static_cast<std::int64_t>(uniform_below(span));
}

double RngStream::laplace(double center, double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("laplace: scale must be > 0");
    // u in (-1/2, 1/2]; inverse CDF keeps both tails
    double u = 0.5 - uniform01();
    if (u >= 0.0) return center - scale * std::log(1.0 - 2.0 * u + 1e-300);
    return center + scale * std::log(1.0 + 2.0 * u + 1e-300);
}

double RngStream::exponential(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("exponential: rate must be > 0");
    return -std::log(1.0 - uniform01()) / rate;
}

std::size_t RngStream::categorical(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0 || !std::isfinite(w)) throw std::invalid_argument("categorical: weights must be finite and >= 0");
        total += w;
    }
    if (!(total > 0.0)) throw std::invalid_argument("categorical: weight sum must be > 0");
    double target = uniform01() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (target < acc) return i;
    }
    // floating accumulation can land exactly on total; last positive weight wins
    for (std::size_t i = weights.size(); i-- > 0;)
        if (weights[i] > 0.0) return i;
    return weights.size() - 1;
}

} // namespace vppsim
