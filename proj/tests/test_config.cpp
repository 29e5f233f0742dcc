#include <doctest.h>

#include "vppsim/config.hpp"

#include <stdexcept>

using namespace vppsim;

namespace {

CampaignConfig base_config() {
    CampaignConfig cfg;
    cfg.dataset_path = "data/example.csv";
    return cfg;
}

} // namespace

TEST_CASE("defaults survive a serialize/parse round trip") {
    CampaignConfig cfg = base_config();
    CampaignConfig back = config_from_json_text(config_to_json_text(cfg), "roundtrip");
    CHECK_EQ(config_digest_hex(back), config_digest_hex(cfg));
    CHECK_EQ(back.dataset_path, cfg.dataset_path);
    CHECK_EQ(back.allocation, cfg.allocation);
    CHECK_EQ(back.privacy.eps3_grid, cfg.privacy.eps3_grid);
    CHECK_EQ(back.rewards.mr, cfg.rewards.mr);
    CHECK_EQ(back.market.endowment, cfg.market.endowment);
    CHECK_EQ(back.rounds, cfg.rounds);
    CHECK_EQ(back.elections, cfg.elections);
    CHECK_EQ(back.mechanisms, cfg.mechanisms);
}

TEST_CASE("json overrides reach every knob, coins in all three spellings") {
    const char* text = R"({
        "dataset": {"path": "meters.csv", "format": {"customer": "cid", "timestamp": "ts"}},
        "allocation": [2, 3],
        "thresholds": {"mode": "absolute", "stable_kwh": 10, "breakdown_kwh": 20, "max_capacity_kwh": 30},
        "privacy": {"eps1": 0.5, "eps3_grid": [0.2], "string_length": 8, "dq2_max_trade_kwh": 2.5},
        "rewards": {"mr": 250, "ppoem_split": "prose"},
        "market": {"ask_lo": "2.5", "ask_hi": "6.0", "bid_lo": 4, "bid_hi": 10, "endowment": 3.75},
        "queue": {"arrival": [1, 2], "service": [1], "gain": [5], "capacity": 2, "unit_cost": 0.5},
        "mechanisms": ["poem", "ppoem"],
        "rounds": 50,
        "elections": 500,
        "seed": 7,
        "welfare_buyer_grid": [3, 6],
        "welfare_reps": 10
    })";
    CampaignConfig cfg = config_from_json_text(text, "inline");
    CHECK_EQ(cfg.dataset_path, "meters.csv");
    CHECK_EQ(cfg.format.customer_col, "cid");
    CHECK_EQ(cfg.format.timestamp_col, "ts");
    CHECK_EQ(cfg.format.consumption_col, "consumption_kwh"); // untouched default
    CHECK_EQ(cfg.allocation, (std::vector<int>{2, 3}));
    CHECK_FALSE(cfg.thresholds.percentile_mode);
    CHECK_EQ(cfg.thresholds.absolute.breakdown_kwh, 20.0);
    CHECK_EQ(cfg.privacy.eps1, 0.5);
    CHECK_EQ(cfg.privacy.eps2, 1.0); // untouched default
    CHECK_EQ(cfg.privacy.eps3_grid, std::vector<double>{0.2});
    CHECK_EQ(cfg.privacy.string_length, 8);
    CHECK_EQ(cfg.rewards.mr, coins(250));        // bare integer = whole coins
    CHECK_EQ(cfg.market.ask_lo, 2'500'000);      // decimal string
    CHECK_EQ(cfg.market.endowment, 3'750'000);   // float
    CHECK_EQ(cfg.rewards.ppoem_split, "prose");
    CHECK_EQ(cfg.queue.capacity, 2);
    CHECK_EQ(cfg.rounds, 50);
    CHECK_EQ(cfg.elections, 500);
    CHECK_EQ(cfg.seed, 7);
    CHECK_EQ(cfg.welfare_reps, 10);

    // and the round trip preserves the overridden values too
    CampaignConfig back = config_from_json_text(config_to_json_text(cfg), "roundtrip");
    CHECK_EQ(config_digest_hex(back), config_digest_hex(cfg));
}

TEST_CASE("digest changes when the config changes") {
    CampaignConfig a = base_config();
    CampaignConfig b = base_config();
    CHECK_EQ(config_digest_hex(a), config_digest_hex(b));
    b.seed = 43;
    CHECK_NE(config_digest_hex(a), config_digest_hex(b));
    b = base_config();
    b.privacy.eps3_grid = {0.5};
    CHECK_NE(config_digest_hex(a), config_digest_hex(b));
}

TEST_CASE("validation rejects broken configs") {
    auto reject = [](auto mutate) {
        CampaignConfig cfg;
        cfg.dataset_path = "x.csv";
        mutate(cfg);
        CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    };
    reject([](CampaignConfig& c) { c.dataset_path.clear(); });
    reject([](CampaignConfig& c) { c.allocation.clear(); });
    reject([](CampaignConfig& c) { c.allocation = {3, 0}; });
    reject([](CampaignConfig& c) { c.privacy.eps1 = 0.0; });
    reject([](CampaignConfig& c) { c.privacy.eps3_grid = {0.1, -0.5}; });
    reject([](CampaignConfig& c) { c.privacy.eps3_grid.clear(); });
    reject([](CampaignConfig& c) { c.privacy.string_length = 0; });
    reject([](CampaignConfig& c) { c.privacy.dq2_max_trade_kwh = 0.0; });
    reject([](CampaignConfig& c) { c.rewards.mr = -1; });
    reject([](CampaignConfig& c) { c.rewards.ppoem_split = "whatever"; });
    reject([](CampaignConfig& c) { c.market.ask_hi = c.market.ask_lo - 1; });
    reject([](CampaignConfig& c) { c.rounds = 0; });
    reject([](CampaignConfig& c) { c.elections = 0; });
    reject([](CampaignConfig& c) { c.mechanisms = {}; });
    reject([](CampaignConfig& c) { c.mechanisms = {"proof-of-stake"}; });
    reject([](CampaignConfig& c) { c.queue.capacity = 0; });
    reject([](CampaignConfig& c) {
        c.thresholds.percentile_mode = false; // absolute thresholds default to 0 < 0 < 0
    });
}

TEST_CASE("parser failures carry the origin") {
    CHECK_THROWS_AS(config_from_json_text("{not json", "bad.json"), std::invalid_argument);
    try {
        config_from_json_text("{not json", "bad.json");
    } catch (const std::invalid_argument& e) {
        CHECK_NE(std::string(e.what()).find("bad.json"), std::string::npos);
    }
    CHECK_THROWS_AS(config_from_json_text(R"({"thresholds": {"mode": "vibes"}})", "x"), std::invalid_argument);
    CHECK_THROWS_AS(load_config("no/such/config.json"), std::runtime_error);
}
