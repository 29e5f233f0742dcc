#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "vppsim/analytics.hpp"
#include "vppsim/config.hpp"
#include "vppsim/rng.hpp"

namespace vppsim {

// Validation-grade simulators shipped with the product so the sweep
// reports can always put a measured number next to every closed form.
// The unit tests check the closed forms against their own, separately
// written oracles; these helpers are for the CSV reports.

// Exact unit-step enumeration of the mining race: a leader steps and b
// challenger steps interleaved uniformly; drop_last removes one leader
// step first (the reported trade). Returns P(leader strictly ahead at
// every prefix). a + b must stay small enough to enumerate (<= 24).
double race_enumeration(int a, int b, bool drop_last);

// Mean consecutive steps spent in `t1_states` over a simulated chain.
double simulate_sojourn(const WinStateChain& chain, const std::vector<int>& t1_states, std::uint64_t steps,
                        RngStream& rng);

// Fraction of arrivals lost in an M/M/1/K discrete-event simulation.
double simulate_blocking(const QueueParams& q, std::uint64_t arrivals, RngStream& rng);

struct SweepReport {
    std::string race_csv;
    std::string convergence_csv;
    std::string sojourn_csv;
    std::string queue_csv;
    bool pass = true;
    std::vector<std::string> failures;
};

// Race grid + convergence pairs + sojourn and queue comparisons, each
// row carrying closed form, measured value and absolute error. `gain_from_cut`
// adds one queue row whose gain M is leader_validation_cut * mean_tx_fee.
SweepReport analytics_sweeps(const QueueGridConfig& queue, double gain_from_cut, std::uint64_t seed);

struct WelfareRow {
    std::string mechanism;
    int buyers = 0;
    double mean_seller_welfare = 0.0; // coins, aggregate per market
    double mean_buyer_welfare = 0.0;
};

struct WelfareReport {
    std::vector<WelfareRow> rows;
    std::string csv;
    bool seller_welfare_monotone = true; // non-decreasing in buyer count
};

WelfareReport welfare_sweep(const MarketConfig& market, const PrivacyConfig& privacy,
                            const std::vector<int>& buyer_grid, int reps, std::uint64_t seed);

struct DpAuditOutput {
    std::string json;
    bool pass = true;
};

// Exact-distribution ratio audits for the private selectors on a 5-VPP
// census grid (miner selection, one audit per eps3) and on midpoint-shift
// neighbors (price selection, eps2).
DpAuditOutput dp_audit_report(const PrivacyConfig& privacy);

} // namespace vppsim
