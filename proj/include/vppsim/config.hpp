#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vppsim/coin.hpp"
#include "vppsim/ingest.hpp"
#include "vppsim/system_state.hpp"

namespace vppsim {

struct ThresholdConfig {
    bool percentile_mode = true; // derive bands from the load history
    double p_stable = 0.50;
    double p_breakdown = 0.80;
    double p_max = 0.95;
    StateThresholds absolute; // used when percentile_mode is false
};

struct PrivacyConfig {
    double eps1 = 1.0;
    double eps2 = 1.0;
    std::vector<double> eps3_grid = {0.1, 0.01, 0.001};
    int string_length = 16;
    double dq2_max_trade_kwh = 5.0; // miner-selection score sensitivity
};

struct RewardConfig {
    Coin mr = coins(500);
    double leader_validation_cut = 0.05; // feeds the queue-model gain M
    std::string ppoem_split = "algorithm"; // or "prose" (non-conserving, logged)
};

struct MarketConfig {
    Coin ask_lo = coins(2);
    Coin ask_hi = coins(6);
    Coin bid_lo = coins(4);
    Coin bid_hi = coins(10);
    Coin endowment = coins(1'000'000); // per buyer-capable prosumer at genesis
};

struct QueueGridConfig {
    std::vector<double> arrival = {2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
    std::vector<double> service = {2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
    std::vector<double> gain = {10, 15, 20, 25, 30};
    int capacity = 5;
    double unit_cost = 1.0;
};

struct CampaignConfig {
    std::string dataset_path;
    CsvFormat format;
    std::vector<int> allocation = {3, 3, 4, 5, 5, 10, 10, 10, 20, 30};
    ThresholdConfig thresholds;
    PrivacyConfig privacy;
    RewardConfig rewards;
    MarketConfig market;
    QueueGridConfig queue;
    std::vector<std::string> mechanisms = {"poem", "ppoem", "poa", "poe"};
    std::uint64_t rounds = 1'000;      // market rounds / blocks per chain
    std::uint64_t elections = 10'000;  // standalone election-campaign tallies
    std::uint64_t seed = 42;
    std::vector<int> welfare_buyer_grid = {5, 10, 20, 40, 80};
    int welfare_reps = 200;

    void validate() const;
};

CampaignConfig config_from_json_text(const std::string& text, const std::string& origin);
CampaignConfig load_config(const std::string& path);
std::string config_to_json_text(const CampaignConfig& cfg);
// Hash of the canonical re-serialized config, for the run manifest.
std::string config_digest_hex(const CampaignConfig& cfg);

} // namespace vppsim
