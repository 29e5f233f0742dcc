#include "vppsim/system_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vppsim {

const char* state_name(StateLabel label) {
    switch (label) {
        case StateLabel::Stable: return "stable";
        case StateLabel::Warning: return "warning";
        case StateLabel::Breakdown: return "breakdown";
        case StateLabel::Shutdown: return "shutdown";
    }
    return "?";
}

StateLabel state_from_name(const std::string& name) {
    if (name == "stable") return StateLabel::Stable;
    if (name == "warning") return StateLabel::Warning;
    if (name == "breakdown") return StateLabel::Breakdown;
    if (name == "shutdown") return StateLabel::Shutdown;
    throw std::invalid_argument("unknown state name: " + name);
}

void StateThresholds::validate() const {
    if (!(stable_limit_kwh > 0.0) || !(breakdown_kwh > stable_limit_kwh) || !(max_capacity_kwh > breakdown_kwh))
        throw std::invalid_argument("thresholds must satisfy 0 < stable < breakdown < max capacity");
}

SystemState classify(double demand_kwh, const StateThresholds& thresholds) {
    thresholds.validate();
    if (!std::isfinite(demand_kwh) || demand_kwh < 0.0)
        throw std::invalid_argument("classify: demand must be finite and >= 0");
    if (demand_kwh <= thresholds.stable_limit_kwh) return {StateLabel::Stable, 10};
    if (demand_kwh <= thresholds.breakdown_kwh) return {StateLabel::Warning, 7};
    if (demand_kwh <= thresholds.max_capacity_kwh) return {StateLabel::Breakdown, 3};
    return {StateLabel::Shutdown, 1};
}

StateThresholds thresholds_from_history(const std::vector<double>& hourly_load) {
    if (hourly_load.empty()) throw std::invalid_argument("thresholds_from_history: empty history");
    std::vector<double> sorted = hourly_load;
    std::sort(sorted.begin(), sorted.end());
    auto nearest_rank = [&](double p) {
        std::size_t rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(sorted.size())));
        if (rank == 0) rank = 1;
        return sorted[std::min(rank, sorted.size()) - 1];
    };
    StateThresholds t;
    t.stable_limit_kwh = nearest_rank(0.50);
    t.breakdown_kwh = nearest_rank(0.80);
    t.max_capacity_kwh = nearest_rank(0.95);
    t.validate(); // flat histories collapse the percentiles; refuse rather than invent bands
    return t;
}

} // namespace vppsim
