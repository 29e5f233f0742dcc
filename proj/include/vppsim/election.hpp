#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vppsim/coin.hpp"
#include "vppsim/rng.hpp"

namespace vppsim {

struct EnergyCensus {
    std::vector<std::string> vpp_ids;
    std::vector<double> energy_kwh; // traded energy per VPP this round, S_k

    double total() const;
    void validate() const; // sizes match, energies finite and >= 0, at least one VPP
};

// Winner plus two courtesy winners, as indices into the census. -1 where
// fewer than three VPPs exist. uniform_fallback marks an all-zero census
// resolved by a uniform draw.
struct Podium {
    int winner = -1;
    int second = -1;
    int third = -1;
    bool uniform_fallback = false;
};

// Winner probability S_k / S_sum; second and third drawn from the same
// weights renormalized over the remaining VPPs.
Podium select_poem(const EnergyCensus& census, RngStream& rng);

// Exact private-selection distribution: p_k proportional to
// exp(eps3 * S_k / (2 * dq2)). Exposed so audits and tests can check the
// analytical distribution, not just samples.
std::vector<double> ppoem_distribution(const EnergyCensus& census, double eps3, double dq2);

Podium select_ppoem(const EnergyCensus& census, double eps3, double dq2, RngStream& rng);

// Uniform without replacement over all VPPs (authority baseline).
Podium select_poa(std::size_t vpp_count, RngStream& rng);

// Weight 1 / (|production - consumption| + delta): the better a VPP
// balances its book, the likelier it wins (estimation baseline).
inline constexpr double kPoeDelta = 1e-6;
Podium select_poe(const std::vector<double>& production_kwh, const std::vector<double>& consumption_kwh,
                  RngStream& rng);

struct RewardSplit {
    Coin winner = 0; // includes the minted base reward
    Coin second = 0;
    Coin third = 0;
    Coin minted = 0; // == mr

    Coin total() const { return winner + second + third; }
};

// Public rule: winner MR + 0.7*M_sum, second 0.2*M_sum, third 0.1*M_sum.
// Courtesy shares are floored to micro-coins and the winner takes the
// sub-micro-coin remainder, so total() == mr + m_sum exactly.
RewardSplit reward_public(Coin m_sum, Coin mr);

// Private rule: R_R uniform on [0, M_sum]; winner MR + R_R, second
// 0.7 of the remainder, third the rest. total() == mr + m_sum exactly.
RewardSplit reward_private(Coin m_sum, Coin mr, RngStream& rng);

// Historical variant of the private split (0.2/0.1 of M_sum for the
// courtesy winners). Does not conserve: total() != mr + m_sum unless
// R_R happens to equal 0.7*M_sum. Kept behind a config switch.
RewardSplit reward_private_prose(Coin m_sum, Coin mr, RngStream& rng);

enum class Mechanism { Poem, Ppoem, Poa, Poe };

const char* mechanism_name(Mechanism m);
Mechanism mechanism_from_name(const std::string& name);

// Everything one election needs beyond the census.
struct ElectionParams {
    Mechanism mechanism = Mechanism::Poem;
    double eps3 = 0.1; // ppoem
    double dq2 = 1.0;  // ppoem score sensitivity: max single-trade energy
    Coin m_sum = 0;
    Coin mr = 0;
    bool prose_split = false;                 // ppoem reward variant
    std::vector<double> production_kwh;       // poe
    std::vector<double> consumption_kwh;      // poe
};

struct ElectionOutcome {
    Podium podium;
    RewardSplit rewards;
};

ElectionOutcome run_election(const EnergyCensus& census, const ElectionParams& params, RngStream& rng);

// Aggregates over a campaign of independent elections. Counters and
// rewards are integers, so any summation order gives identical results.
struct CampaignTally {
    std::vector<std::uint64_t> wins;
    std::vector<std::uint64_t> seconds;
    std::vector<std::uint64_t> thirds;
    std::vector<Coin> rewards;
    std::uint64_t fallback_rounds = 0;
    std::uint64_t elections = 0;

    std::uint64_t spread() const; // max wins - min wins
};

enum class Exec { Serial, OpenMP };

// Runs `n` elections of the same spec. Election e draws only from the
// derived stream (master_seed, "election", e), so the parallel policy is
// bit-identical to the serial reference for every thread count.
CampaignTally run_elections(const EnergyCensus& census, const ElectionParams& params, std::uint64_t n,
                            std::uint64_t master_seed, Exec policy);

} // namespace vppsim
