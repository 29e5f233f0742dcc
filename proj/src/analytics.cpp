#include "vppsim/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vppsim {

double race_probability(const RaceParams& params) {
    const double sx = params.sx, sy = params.sy, e = params.e;
    if (!std::isfinite(sx) || !std::isfinite(sy) || !std::isfinite(e) || sx < 0.0 || sy < 0.0)
        throw std::invalid_argument("race_probability: energies must be finite and >= 0");
    if (e < 0.0 || e > sx) throw std::invalid_argument("race_probability: need 0 <= E <= Sx");
    if (sx < sy + e)
        throw std::domain_error("race_probability: defined only for Sx >= Sy + E");
    double denom = sx * (sx - e) + sy * (sy - e) + 2.0 * sx * sy;
    if (!(denom > 0.0)) throw std::domain_error("race_probability: degenerate race, Sx + Sy <= E");
    double numer = sx * (sx - e) - sy * (sy + e);
    double p = numer / denom;
    // the guard region already forces p into [0,1]; clamp only rounding dust
    if (p < 0.0) p = 0.0;
    if (p > 1.0) p = 1.0;
    return p;
}

double steady_market_share(const MarketTransitions& m) {
    if (m.p_xy < 0.0 || m.p_xy > 1.0 || m.p_yx < 0.0 || m.p_yx > 1.0)
        throw std::invalid_argument("steady_market_share: probabilities must lie in [0,1]");
    double denom = m.p_yx + m.p_xy;
    if (!(denom > 0.0))
        throw std::invalid_argument("steady_market_share: both transition probabilities are zero");
    return m.p_yx / denom;
}

std::vector<double> market_convergence_path(const MarketTransitions& m, double initial_share, int steps) {
    if (initial_share < 0.0 || initial_share > 1.0)
        throw std::invalid_argument("market_convergence_path: initial share must lie in [0,1]");
    if (steps < 0) throw std::invalid_argument("market_convergence_path: steps must be >= 0");
    if (m.p_xy < 0.0 || m.p_xy > 1.0 || m.p_yx < 0.0 || m.p_yx > 1.0)
        throw std::invalid_argument("market_convergence_path: probabilities must lie in [0,1]");
    std::vector<double> path;
    path.reserve(static_cast<std::size_t>(steps) + 1);
    double c = initial_share;
    path.push_back(c);
    for (int t = 0; t < steps; ++t) {
        c = c * (1.0 - m.p_xy) + (1.0 - c) * m.p_yx;
        path.push_back(c);
    }
    return path;
}

int share_band(double share_pct) {
    if (!std::isfinite(share_pct) || share_pct < 0.0 || share_pct > 100.0)
        throw std::invalid_argument("share_band: share must lie in [0,100]");
    if (share_pct >= 20.0) return 0;
    if (share_pct >= 10.0) return 1;
    return 2;
}

namespace {

// pi P = pi with sum(pi) = 1 via Gaussian elimination on (P^T - I),
// last equation replaced by the normalization row.
std::array<double, 3> solve_stationary(const std::array<std::array<double, 3>, 3>& p) {
    double a[3][4];
    for (int j = 0; j < 3; ++j) {
        for (int i = 0; i < 3; ++i) a[j][i] = p[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        a[j][j] -= 1.0;
        a[j][3] = 0.0;
    }
    for (int i = 0; i < 3; ++i) a[2][i] = 1.0;
    a[2][3] = 1.0;
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int row = col + 1; row < 3; ++row)
            if (std::fabs(a[row][col]) > std::fabs(a[pivot][col])) pivot = row;
        if (std::fabs(a[pivot][col]) < 1e-14)
            throw std::runtime_error("stationary solve: singular system (chain not irreducible?)");
        for (int k = 0; k < 4; ++k) std::swap(a[col][k], a[pivot][k]);
        for (int row = 0; row < 3; ++row) {
            if (row == col) continue;
            double f = a[row][col] / a[col][col];
            for (int k = col; k < 4; ++k) a[row][k] -= f * a[col][k];
        }
    }
    std::array<double, 3> pi{};
    for (int i = 0; i < 3; ++i) pi[static_cast<std::size_t>(i)] = a[i][3] / a[i][i];
    return pi;
}

} // namespace

WinStateChain win_state_chain_from_matrix(const std::array<std::array<double, 3>, 3>& p) {
    for (const auto& row : p) {
        double sum = 0.0;
        for (double v : row) {
            if (v < 0.0 || !std::isfinite(v)) throw std::invalid_argument("win chain: matrix entries must be >= 0");
            sum += v;
        }
        if (std::fabs(sum - 1.0) > 1e-9) throw std::invalid_argument("win chain: rows must sum to 1");
    }
    WinStateChain chain;
    chain.p = p;
    chain.pi = solve_stationary(p);
    return chain;
}

WinStateChain win_state_chain_from_shares(const std::vector<double>& share_history_pct) {
    if (share_history_pct.size() < 2)
        throw std::invalid_argument("win chain: need at least two observations");
    WinStateChain chain;
    int first = share_band(share_history_pct.front());
    bool single = true;
    for (std::size_t t = 1; t < share_history_pct.size(); ++t) {
        int from = share_band(share_history_pct[t - 1]);
        int to = share_band(share_history_pct[t]);
        ++chain.counts[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)];
        if (to != first || from != first) single = false;
    }
    if (single) {
        // the campaign never left one band; the chain is that band, absorbing
        chain.degenerate = true;
        chain.degenerate_state = first;
        for (int i = 0; i < 3; ++i) chain.p[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
        chain.pi = {0.0, 0.0, 0.0};
        chain.pi[static_cast<std::size_t>(first)] = 1.0;
        return chain;
    }
    for (std::size_t i = 0; i < 3; ++i) {
        std::uint64_t row = 0;
        for (std::size_t j = 0; j < 3; ++j) row += chain.counts[i][j];
        for (std::size_t j = 0; j < 3; ++j)
            chain.p[i][j] = (static_cast<double>(chain.counts[i][j]) + 1.0) / (static_cast<double>(row) + 3.0);
    }
    chain.pi = solve_stationary(chain.p);
    return chain;
}

double mean_winning_sojourn(const WinStateChain& chain, const std::vector<int>& t1_states) {
    if (t1_states.empty() || t1_states.size() >= 3)
        throw std::invalid_argument("mean_winning_sojourn: T1 must be a non-empty proper subset");
    bool in_set[3] = {false, false, false};
    for (int s : t1_states) {
        if (s < 0 || s > 2) throw std::invalid_argument("mean_winning_sojourn: bad state index");
        in_set[s] = true;
    }
    double visit = 0.0, exits = 0.0;
    for (int j = 0; j < 3; ++j) {
        if (!in_set[j]) continue;
        double pj = chain.pi[static_cast<std::size_t>(j)];
        visit += pj;
        double exit_prob = 0.0;
        for (int k = 0; k < 3; ++k)
            if (!in_set[k]) exit_prob += chain.p[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
        exits += pj * exit_prob;
    }
    if (!(visit > 0.0)) return 0.0; // the band is never visited
    if (!(exits > 0.0)) return std::numeric_limits<double>::infinity();
    return visit / exits;
}

double stationary_residual(const WinStateChain& chain) {
    double worst = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
        double v = 0.0;
        for (std::size_t i = 0; i < 3; ++i) v += chain.pi[i] * chain.p[i][j];
        worst = std::max(worst, std::fabs(v - chain.pi[j]));
    }
    return worst;
}

namespace {

void check_queue(const QueueParams& q) {
    if (!(q.arrival_rate > 0.0) || !(q.service_rate > 0.0))
        throw std::invalid_argument("queue: rates must be > 0");
    if (q.capacity < 1) throw std::invalid_argument("queue: capacity must be >= 1");
}

} // namespace

double blocking_probability(const QueueParams& q) {
    check_queue(q);
    double rho = q.arrival_rate / q.service_rate;
    double t = static_cast<double>(q.capacity);
    if (std::fabs(rho - 1.0) < 1e-12) return 1.0 / (t + 1.0);
    return std::pow(rho, t) * (1.0 - rho) / (1.0 - std::pow(rho, t + 1.0));
}

double leading_profit(const QueueParams& q) {
    check_queue(q);
    double rho = q.arrival_rate / q.service_rate;
    double t = static_cast<double>(q.capacity);
    double factor = std::fabs(rho - 1.0) < 1e-12 ? t / (t + 1.0)
                                                 : (1.0 - std::pow(rho, t)) / (1.0 - std::pow(rho, t + 1.0));
    return q.arrival_rate * q.gain * factor - q.unit_cost * q.service_rate;
}

} // namespace vppsim
