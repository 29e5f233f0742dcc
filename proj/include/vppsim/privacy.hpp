#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "vppsim/coin.hpp"
#include "vppsim/rng.hpp"

namespace vppsim {

struct PrivacyBudget {
    double eps1 = 1.0; // price-string perturbation
    double eps2 = 1.0; // price selection
    double eps3 = 0.1; // miner selection

    void validate() const {
        if (!(eps1 > 0.0) || !(eps2 > 0.0) || !(eps3 > 0.0))
            throw std::invalid_argument("privacy budget: every epsilon must be > 0");
    }
};

// One Laplace draw; thin named wrapper so call sites read like the
// mechanism they implement.
inline double laplace_sample(double center, double scale, RngStream& rng) { return rng.laplace(center, scale); }

struct PriceString {
    std::vector<Coin> candidates; // each in (ask, bid], micro-coins
    Coin ask = 0;
    Coin bid = 0;
    double center = 0.0; // ask + dif/2, coin units
    double scale = 0.0;  // dif/eps1, coin units
};

// Candidate prices: `length` Laplace draws centered on the midpoint of
// (ask, bid] with scale dif/eps1, rejection-resampled until they land in
// the interval (at micro-coin resolution). bid == ask degenerates to
// `length` copies of that price. Requires bid >= ask > 0, length >= 1.
PriceString build_price_string(Coin winning_bid, Coin ask, int length, double eps1, RngStream& rng);

// Normalized exponential-mechanism distribution over candidate scores:
// p_i proportional to exp(eps * score_i / (2 * sensitivity)), computed in
// log space so large magnitudes cannot overflow. sensitivity > 0.
std::vector<double> exponential_mechanism_distribution(const std::vector<double>& scores, double eps,
                                                       double sensitivity);

// Draws one index from that distribution.
std::size_t exponential_select(const std::vector<double>& scores, double eps, double sensitivity, RngStream& rng);

struct PriceOutcome {
    Coin price = 0;
    double eps_spent = 0.0; // eps1 + eps2, worst-case accounting
    PriceString string;
    std::vector<double> distribution; // selection probabilities over candidates
};

// Full private pricing pipeline: string build (eps1) + exponential
// selection (eps2) with utility q(o) = -|o - midpoint| and sensitivity
// dif/2. bid == ask short-circuits to that price.
PriceOutcome private_price(Coin winning_bid, Coin ask, const PrivacyBudget& budget, int length, RngStream& rng);

struct DpAuditReport {
    double max_abs_log_ratio = 0.0;
    std::size_t pairs_checked = 0;
    std::size_t outcomes_checked = 0;
    bool support_mismatch = false; // an outcome had zero probability on one side only

    bool within(double eps_claimed, double slack = 1e-9) const {
        return !support_mismatch && max_abs_log_ratio <= eps_claimed + slack;
    }
};

// Exact-distribution privacy audit: for every neighbor pair (a, b) the
// mechanism must assign probabilities whose log-ratio never exceeds the
// claimed epsilon. `mechanism` maps an input to a full distribution over
// a common outcome space. Probabilities below 1e-300 count as zero.
template <class Input, class Mechanism>
DpAuditReport dp_ratio_audit(Mechanism&& mechanism, const std::vector<std::pair<Input, Input>>& neighbor_pairs) {
    DpAuditReport report;
    for (const auto& [a, b] : neighbor_pairs) {
        std::vector<double> pa = mechanism(a);
        std::vector<double> pb = mechanism(b);
        if (pa.size() != pb.size()) throw std::invalid_argument("dp_ratio_audit: outcome spaces differ in size");
        ++report.pairs_checked;
        for (std::size_t i = 0; i < pa.size(); ++i) {
            ++report.outcomes_checked;
            bool za = pa[i] < 1e-300, zb = pb[i] < 1e-300;
            if (za && zb) continue;
            if (za != zb) {
                report.support_mismatch = true;
                report.max_abs_log_ratio = std::numeric_limits<double>::infinity();
                continue;
            }
            double r = std::fabs(std::log(pa[i] / pb[i]));
            if (r > report.max_abs_log_ratio) report.max_abs_log_ratio = r;
        }
    }
    return report;
}

} // namespace vppsim
