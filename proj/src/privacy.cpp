#include "vppsim/privacy.hpp"

#include <algorithm>

namespace vppsim {

PriceString build_price_string(Coin winning_bid, Coin ask, int length, double eps1, RngStream& rng) {
    if (ask <= 0 || winning_bid < ask) throw std::invalid_argument("build_price_string: need bid >= ask > 0");
    if (length < 1) throw std::invalid_argument("build_price_string: length must be >= 1");
    if (!(eps1 > 0.0)) throw std::invalid_argument("build_price_string: eps1 must be > 0");

    PriceString ps;
    ps.ask = ask;
    ps.bid = winning_bid;
    double ask_c = coin_to_double(ask);
    double dif = coin_to_double(winning_bid - ask);
    ps.center = ask_c + dif / 2.0;
    ps.scale = dif / eps1;
    ps.candidates.reserve(static_cast<std::size_t>(length));
    if (winning_bid == ask) {
        ps.candidates.assign(static_cast<std::size_t>(length), winning_bid);
        return ps;
    }
    for (int i = 0; i < length; ++i) {
        Coin accepted = 0;
        bool ok = false;
        // resample until the draw lands inside (ask, bid]; acceptance
        // probability is at least about dif/(4*scale), so this terminates
        // fast for any eps1 the budget validator admits
        for (long attempt = 0; attempt < 20'000'000; ++attempt) {
            double draw = laplace_sample(ps.center, ps.scale, rng);
            Coin quantized = coin_from_double(draw);
            if (quantized > ask && quantized <= winning_bid) {
                accepted = quantized;
                ok = true;
                break;
            }
        }
        if (!ok) throw std::runtime_error("build_price_string: rejection sampling failed to converge");
        ps.candidates.push_back(accepted);
    }
    return ps;
}

std::vector<double> exponential_mechanism_distribution(const std::vector<double>& scores, double eps,
                                                       double sensitivity) {
    if (scores.empty()) throw std::invalid_argument("exponential mechanism: no candidates");
    if (!(eps > 0.0)) throw std::invalid_argument("exponential mechanism: eps must be > 0");
    if (!(sensitivity > 0.0)) throw std::invalid_argument("exponential mechanism: sensitivity must be > 0");
    std::vector<double> logits(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) logits[i] = eps * scores[i] / (2.0 * sensitivity);
    double top = *std::max_element(logits.begin(), logits.end());
    double z = 0.0;
    for (double& l : logits) {
        l = std::exp(l - top);
        z += l;
    }
    for (double& l : logits) l /= z;
    return logits;
}

std::size_t exponential_select(const std::vector<double>& scores, double eps, double sensitivity, RngStream& rng) {
    return rng.categorical(exponential_mechanism_distribution(scores, eps, sensitivity));
}

PriceOutcome private_price(Coin winning_bid, Coin ask, const PrivacyBudget& budget, int length, RngStream& rng) {
    budget.validate();
    PriceOutcome out;
    out.eps_spent = budget.eps1 + budget.eps2;
    out.string = build_price_string(winning_bid, ask, length, budget.eps1, rng);
    if (winning_bid == ask) {
        out.price = winning_bid;
        out.distribution.assign(out.string.candidates.size(), 1.0 / static_cast<double>(length));
        return out;
    }
    double sensitivity = coin_to_double(winning_bid - ask) / 2.0; // midpoint shift bound
    std::vector<double> scores(out.string.candidates.size());
    for (std::size_t i = 0; i < scores.size(); ++i)
        scores[i] = -std::fabs(coin_to_double(out.string.candidates[i]) - out.string.center);
    out.distribution = exponential_mechanism_distribution(scores, budget.eps2, sensitivity);
    out.price = out.string.candidates[rng.categorical(out.distribution)];
    return out;
}

} // namespace vppsim
