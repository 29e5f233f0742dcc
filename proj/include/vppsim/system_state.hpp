#pragma once

#include <string>
#include <vector>

namespace vppsim {

// Grid operating state derived from accumulated hourly demand. Each
// state carries one fee percentage applied to both the transaction fee
// and the mining fee of every trade settled in that round.
enum class StateLabel { Stable, Warning, Breakdown, Shutdown };

struct SystemState {
    StateLabel label = StateLabel::Stable;
    int fee_pct = 10; // whole percent, exact in integer fee math

    double tx_fee_ratio() const { return fee_pct / 100.0; }
    double mining_fee_ratio() const { return fee_pct / 100.0; }
};

const char* state_name(StateLabel label);
StateLabel state_from_name(const std::string& name);

struct StateThresholds {
    double stable_limit_kwh = 0.0; // S_l
    double breakdown_kwh = 0.0;    // B_p
    double max_capacity_kwh = 0.0; // M_c

    // Throws unless 0 < S_l < B_p < M_c.
    void validate() const;
};

// Demand G_E in [0, S_l] -> Stable 10%, (S_l, B_p] -> Warning 7%,
// (B_p, M_c] -> Breakdown 3%, above M_c -> Shutdown 1%. Boundary values
// belong to the less severe state. Negative or non-finite demand throws.
SystemState classify(double demand_kwh, const StateThresholds& thresholds);

// Default thresholds from the load history: 50th/80th/95th percentiles
// (nearest-rank) of accumulated hourly load. Throws if the percentiles
// collapse (history too flat to separate the bands) or history is empty.
StateThresholds thresholds_from_history(const std::vector<double>& hourly_load);

} // namespace vppsim
