#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace vppsim {

// Every random draw in the simulator flows from one master seed through
// named sub-streams ("round", "election", "dp", ...). A stream is fully
// determined by (master, name, index), so independent work items can be
// executed in any order, or in parallel, and still reproduce the exact
// run: stream derivation is the concurrency model.
//
// mt19937_64 output is pinned by the standard; the std:: distributions
// are not, so sampling helpers below are hand-specified to keep reports
// byte-identical across standard libraries.

std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t fnv1a64(std::string_view text);

class RngStream {
  public:
    RngStream(std::uint64_t master_seed, std::string_view stream_name, std::uint64_t index);

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0,1), 53-bit resolution.
    double uniform01();
    // Uniform in [lo, hi). Requires lo < hi.
    double uniform_range(double lo, double hi);
    // Unbiased uniform integer in [0, n). Requires n > 0.
    std::uint64_t uniform_below(std::uint64_t n);
    // Uniform integer in [lo, hi] inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
    // Laplace(center, scale) via inverse CDF. Requires scale > 0.
    double laplace(double center, double scale);
    // Exponential with given rate (mean 1/rate). Requires rate > 0.
    double exponential(double rate);
    // Index draw proportional to non-negative weights; sum must be > 0.
    std::size_t categorical(const std::vector<double>& weights);

  private:
    std::mt19937_64 engine_;
};

} // namespace vppsim
