#include "vppsim/election.hpp"

#include "vppsim/privacy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vppsim {

double EnergyCensus::total() const {
    double sum = 0.0;
    for (double e : energy_kwh) sum += e;
    return sum;
}

void EnergyCensus::validate() const {
    if (vpp_ids.empty()) throw std::invalid_argument("census: no VPPs");
    if (vpp_ids.size() != energy_kwh.size()) throw std::invalid_argument("census: id/energy size mismatch");
    for (double e : energy_kwh)
        if (!std::isfinite(e) || e < 0.0) throw std::invalid_argument("census: energies must be finite and >= 0");
}

namespace {

// Draws winner, second, third without replacement from the given
// weights. If the still-open candidates all weigh zero, the remaining
// picks are uniform among them (the renormalized limit).
Podium podium_from_weights(const std::vector<double>& weights, RngStream& rng) {
    Podium p;
    const std::size_t n = weights.size();
    std::vector<bool> taken(n, false);
    int* slots[3] = {&p.winner, &p.second, &p.third};
    const std::size_t picks = std::min<std::size_t>(3, n);
    for (std::size_t k = 0; k < picks; ++k) {
        std::vector<double> open(n, 0.0);
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (!taken[i]) {
                open[i] = weights[i];
                total += weights[i];
            }
        std::size_t chosen;
        if (total > 0.0) {
            chosen = rng.categorical(open);
        } else {
            std::vector<std::size_t> candidates;
            for (std::size_t i = 0; i < n; ++i)
                if (!taken[i]) candidates.push_back(i);
            chosen = candidates[rng.uniform_below(candidates.size())];
        }
        taken[chosen] = true;
        *slots[k] = static_cast<int>(chosen);
    }
    return p;
}

} // namespace

Podium select_poem(const EnergyCensus& census, RngStream& rng) {
    census.validate();
    Podium p;
    if (census.total() > 0.0) {
        p = podium_from_weights(census.energy_kwh, rng);
    } else {
        p = podium_from_weights(std::vector<double>(census.vpp_ids.size(), 1.0), rng);
        p.uniform_fallback = true;
    }
    return p;
}

std::vector<double> ppoem_distribution(const EnergyCensus& census, double eps3, double dq2) {
    census.validate();
    return exponential_mechanism_distribution(census.energy_kwh, eps3, dq2);
}

Podium select_ppoem(const EnergyCensus& census, double eps3, double dq2, RngStream& rng) {
    // weights are strictly positive for every VPP, so no fallback branch
    Podium p = podium_from_weights(ppoem_distribution(census, eps3, dq2), rng);
    p.uniform_fallback = census.total() <= 0.0; // still worth flagging for the round log
    return p;
}

Podium select_poa(std::size_t vpp_count, RngStream& rng) {
    if (vpp_count == 0) throw std::invalid_argument("select_poa: no VPPs");
    Podium p = podium_from_weights(std::vector<double>(vpp_count, 1.0), rng);
    return p;
}

Podium select_poe(const std::vector<double>& production_kwh, const std::vector<double>& consumption_kwh,
                  RngStream& rng) {
    if (production_kwh.empty() || production_kwh.size() != consumption_kwh.size())
        throw std::invalid_argument("select_poe: production/consumption size mismatch");
    std::vector<double> weights(production_kwh.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        double gap = std::fabs(production_kwh[i] - consumption_kwh[i]);
        weights[i] = 1.0 / (gap + kPoeDelta);
    }
    return podium_from_weights(std::move(weights), rng);
}

RewardSplit reward_public(Coin m_sum, Coin mr) {
    if (m_sum < 0 || mr < 0) throw std::invalid_argument("reward_public: negative amounts");
    RewardSplit r;
    r.second = m_sum * 2 / 10;
    r.third = m_sum * 1 / 10;
    r.winner = mr + m_sum - r.second - r.third; // 0.7 share plus remainder dust
    r.minted = mr;
    return r;
}

RewardSplit reward_private(Coin m_sum, Coin mr, RngStream& rng) {
    if (m_sum < 0 || mr < 0) throw std::invalid_argument("reward_private: negative amounts");
    RewardSplit r;
    Coin random_share = m_sum == 0 ? 0 : rng.uniform_int(0, m_sum);
    Coin rest = m_sum - random_share;
    r.winner = mr + random_share;
    r.second = rest * 7 / 10;
    r.third = rest - r.second; // 0.3 share plus remainder dust
    r.minted = mr;
    return r;
}

RewardSplit reward_private_prose(Coin m_sum, Coin mr, RngStream& rng) {
    if (m_sum < 0 || mr < 0) throw std::invalid_argument("reward_private_prose: negative amounts");
    RewardSplit r;
    Coin random_share = m_sum == 0 ? 0 : rng.uniform_int(0, m_sum);
    r.winner = mr + random_share;
    r.second = m_sum * 2 / 10;
    r.third = m_sum * 1 / 10;
    r.minted = mr;
    return r;
}

const char* mechanism_name(Mechanism m) {
    switch (m) {
        case Mechanism::Poem: return "poem";
        case Mechanism::Ppoem: return "ppoem";
        case Mechanism::Poa: return "poa";
        case Mechanism::Poe: return "poe";
    }
    return "?";
}

Mechanism mechanism_from_name(const std::string& name) {
    if (name == "poem") return Mechanism::Poem;
    if (name == "ppoem") return Mechanism::Ppoem;
    if (name == "poa") return Mechanism::Poa;
    if (name == "poe") return Mechanism::Poe;
    throw std::invalid_argument("unknown mechanism: " + name);
}

ElectionOutcome run_election(const EnergyCensus& census, const ElectionParams& params, RngStream& rng) {
    ElectionOutcome out;
    switch (params.mechanism) {
        case Mechanism::Poem: out.podium = select_poem(census, rng); break;
        case Mechanism::Ppoem: out.podium = select_ppoem(census, params.eps3, params.dq2, rng); break;
        case Mechanism::Poa: out.podium = select_poa(census.vpp_ids.size(), rng); break;
        case Mechanism::Poe: out.podium = select_poe(params.production_kwh, params.consumption_kwh, rng); break;
    }
    if (params.mechanism == Mechanism::Ppoem)
        out.rewards = params.prose_split ? reward_private_prose(params.m_sum, params.mr, rng)
                                         : reward_private(params.m_sum, params.mr, rng);
    else
        out.rewards = reward_public(params.m_sum, params.mr);
    return out;
}

std::uint64_t CampaignTally::spread() const {
    if (wins.empty()) return 0;
    auto [lo, hi] = std::minmax_element(wins.begin(), wins.end());
    return *hi - *lo;
}

CampaignTally run_elections(const EnergyCensus& census, const ElectionParams& params, std::uint64_t n,
                            std::uint64_t master_seed, Exec policy) {
    census.validate();
    const std::size_t v = census.vpp_ids.size();
    // per-election slots; both policies fill the same array the same way
    std::vector<ElectionOutcome> slots(n);
    if (policy == Exec::OpenMP) {
#pragma omp parallel for schedule(static)
        for (long long e = 0; e < static_cast<long long>(n); ++e) {
            RngStream rng(master_seed, "election", static_cast<std::uint64_t>(e));
            slots[static_cast<std::size_t>(e)] = run_election(census, params, rng);
        }
    } else {
        for (std::uint64_t e = 0; e < n; ++e) {
            RngStream rng(master_seed, "election", e);
            slots[e] = run_election(census, params, rng);
        }
    }
    CampaignTally tally;
    tally.wins.assign(v, 0);
    tally.seconds.assign(v, 0);
    tally.thirds.assign(v, 0);
    tally.rewards.assign(v, 0);
    tally.elections = n;
    for (const auto& s : slots) {
        if (s.podium.uniform_fallback) ++tally.fallback_rounds;
        if (s.podium.winner >= 0) {
            ++tally.wins[static_cast<std::size_t>(s.podium.winner)];
            tally.rewards[static_cast<std::size_t>(s.podium.winner)] += s.rewards.winner;
        }
        if (s.podium.second >= 0) {
            ++tally.seconds[static_cast<std::size_t>(s.podium.second)];
            tally.rewards[static_cast<std::size_t>(s.podium.second)] += s.rewards.second;
        }
        if (s.podium.third >= 0) {
            ++tally.thirds[static_cast<std::size_t>(s.podium.third)];
            tally.rewards[static_cast<std::size_t>(s.podium.third)] += s.rewards.third;
        }
    }
    return tally;
}

} // namespace vppsim
