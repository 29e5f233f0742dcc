#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace vppsim {

// Closed-form results about the public election dynamics, each paired
// with an independent Monte-Carlo or enumeration oracle in the tests.

struct RaceParams {
    double sx = 0.0; // leader's traded energy
    double sy = 0.0; // challenger's traded energy
    double e = 0.0;  // energy of the leader's last reported trade
};

// Probability that x stays ahead of y in the mining race:
//   [Sx(Sx-E) - Sy(Sy+E)] / [Sx(Sx-E) + Sy(Sy-E) + 2 Sx Sy].
// Defined on 0 <= E <= Sx, Sx >= Sy + E, Sx + Sy > E; anything outside
// that region throws instead of returning a negative "probability".
double race_probability(const RaceParams& params);

struct MarketTransitions {
    double p_xy = 0.0; // P(x -> x'), leader loses a customer
    double p_yx = 0.0; // P(x' -> x), leader gains one
};

// Stationary share of x in the two-state customer chain:
// p_yx / (p_yx + p_xy). Both probabilities in [0,1], not both zero.
double steady_market_share(const MarketTransitions& m);

// Share trajectory c_{ t+1 } = c_t (1 - p_xy) + (1 - c_t) p_yx, starting
// from initial_share; result has steps+1 entries, [0] == initial_share.
std::vector<double> market_convergence_path(const MarketTransitions& m, double initial_share, int steps);

// Win-share bands: T1 >= 20%, T2 in [10, 20), T3 in [0, 10).
int share_band(double share_pct);

struct WinStateChain {
    std::array<std::array<double, 3>, 3> p{}; // row-stochastic transition matrix
    std::array<double, 3> pi{};               // stationary distribution
    std::array<std::array<std::uint64_t, 3>, 3> counts{};
    bool degenerate = false; // history never left one band
    int degenerate_state = -1;
};

// Estimates the band chain from a campaign share history (percent per
// round) with add-one smoothing, then solves pi P = pi, sum pi = 1 by
// dense elimination. A single-band history short-circuits to the
// indicator distribution with that band absorbing.
WinStateChain win_state_chain_from_shares(const std::vector<double>& share_history_pct);

// Builds the chain from an explicit transition matrix (rows must be
// stochastic); used by tests and the sweep tool.
WinStateChain win_state_chain_from_matrix(const std::array<std::array<double, 3>, 3>& p);

// Expected consecutive rounds spent inside the T1 band set:
//   sum_{j in T1} pi_j / sum_{j in T1} pi_j * P(j -> outside T1).
// Returns +inf when the set is absorbing. t1_states must be a non-empty
// proper subset of {0,1,2}.
double mean_winning_sojourn(const WinStateChain& chain, const std::vector<int>& t1_states);

// Residual max_j |(pi P)_j - pi_j|; the solver keeps this <= 1e-10.
double stationary_residual(const WinStateChain& chain);

struct QueueParams {
    double arrival_rate = 1.0; // R_A, winning transactions per unit time
    double service_rate = 1.0; // R_s, validations per unit time
    int capacity = 1;          // T_L, queue limit
    double gain = 0.0;         // M, coins earned per validated transaction
    double unit_cost = 0.0;    // C, cost per unit of service rate
};

// M/M/1/K loss probability with rho = R_A/R_s:
//   rho^T (1 - rho) / (1 - rho^{T+1}),   1/(T+1) at rho == 1.
double blocking_probability(const QueueParams& q);

// Expected leader profit rate:
//   R_A M (1 - rho^T) / (1 - rho^{T+1}) - C R_s,
// with the T/(T+1) limit factor at rho == 1. Equals
// R_A (1 - blocking) M - C R_s identically.
double leading_profit(const QueueParams& q);

} // namespace vppsim
