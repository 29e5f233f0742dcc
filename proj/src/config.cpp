#include "vppsim/config.hpp"

#include "vppsim/sha256.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vppsim {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

Coin coin_field(const json& j) {
    if (j.is_string()) return coin_parse(j.get<std::string>());
    if (j.is_number_integer()) return coins(j.get<std::int64_t>());
    if (j.is_number_float()) return coin_from_double(j.get<double>());
    throw std::invalid_argument("config: coin values must be numbers or decimal strings");
}

template <class T>
void maybe(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

void maybe_coin(const json& j, const char* key, Coin& out) {
    if (j.contains(key)) out = coin_field(j.at(key));
}

} // namespace

void CampaignConfig::validate() const {
    if (dataset_path.empty()) throw std::invalid_argument("config: dataset.path is required");
    if (allocation.empty()) throw std::invalid_argument("config: allocation must not be empty");
    for (int n : allocation)
        if (n < 1) throw std::invalid_argument("config: allocation entries must be >= 1");
    if (!(privacy.eps1 > 0) || !(privacy.eps2 > 0))
        throw std::invalid_argument("config: privacy epsilons must be > 0");
    for (double e : privacy.eps3_grid)
        if (!(e > 0)) throw std::invalid_argument("config: eps3 grid entries must be > 0");
    if (privacy.eps3_grid.empty()) throw std::invalid_argument("config: eps3 grid must not be empty");
    if (privacy.string_length < 1) throw std::invalid_argument("config: string_length must be >= 1");
    if (!(privacy.dq2_max_trade_kwh > 0)) throw std::invalid_argument("config: dq2 must be > 0");
    if (rewards.mr < 0) throw std::invalid_argument("config: mr must be >= 0");
    if (rewards.ppoem_split != "algorithm" && rewards.ppoem_split != "prose")
        throw std::invalid_argument("config: ppoem_split must be 'algorithm' or 'prose'");
    if (market.ask_lo <= 0 || market.ask_hi < market.ask_lo || market.bid_lo <= 0 || market.bid_hi < market.bid_lo)
        throw std::invalid_argument("config: market price ranges must be positive and ordered");
    if (market.endowment < 0) throw std::invalid_argument("config: endowment must be >= 0");
    if (rounds < 1) throw std::invalid_argument("config: rounds must be >= 1");
    if (elections < 1) throw std::invalid_argument("config: elections must be >= 1");
    if (mechanisms.empty()) throw std::invalid_argument("config: at least one mechanism");
    for (const auto& m : mechanisms)
        if (m != "poem" && m != "ppoem" && m != "poa" && m != "poe")
            throw std::invalid_argument("config: unknown mechanism " + m);
    if (!thresholds.percentile_mode) thresholds.absolute.validate();
    if (queue.capacity < 1) throw std::invalid_argument("config: queue capacity must be >= 1");
}

CampaignConfig config_from_json_text(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument("config " + origin + ": " + e.what());
    }
    CampaignConfig cfg;
    if (j.contains("dataset")) {
        const auto& d = j.at("dataset");
        maybe(d, "path", cfg.dataset_path);
        if (d.contains("format")) {
            const auto& f = d.at("format");
            maybe(f, "customer", cfg.format.customer_col);
            maybe(f, "timestamp", cfg.format.timestamp_col);
            maybe(f, "consumption_kwh", cfg.format.consumption_col);
            maybe(f, "generation_kwh", cfg.format.generation_col);
        }
    }
    maybe(j, "allocation", cfg.allocation);
    if (j.contains("thresholds")) {
        const auto& t = j.at("thresholds");
        std::string mode = t.value("mode", "percentile");
        if (mode == "percentile") {
            cfg.thresholds.percentile_mode = true;
            maybe(t, "stable", cfg.thresholds.p_stable);
            maybe(t, "breakdown", cfg.thresholds.p_breakdown);
            maybe(t, "max", cfg.thresholds.p_max);
        } else if (mode == "absolute") {
            cfg.thresholds.percentile_mode = false;
            maybe(t, "stable_kwh", cfg.thresholds.absolute.stable_limit_kwh);
            maybe(t, "breakdown_kwh", cfg.thresholds.absolute.breakdown_kwh);
            maybe(t, "max_capacity_kwh", cfg.thresholds.absolute.max_capacity_kwh);
        } else {
            throw std::invalid_argument("config: thresholds.mode must be 'percentile' or 'absolute'");
        }
    }
    if (j.contains("privacy")) {
        const auto& p = j.at("privacy");
        maybe(p, "eps1", cfg.privacy.eps1);
        maybe(p, "eps2", cfg.privacy.eps2);
        maybe(p, "eps3_grid", cfg.privacy.eps3_grid);
        maybe(p, "string_length", cfg.privacy.string_length);
        maybe(p, "dq2_max_trade_kwh", cfg.privacy.dq2_max_trade_kwh);
    }
    if (j.contains("rewards")) {
        const auto& r = j.at("rewards");
        maybe_coin(r, "mr", cfg.rewards.mr);
        maybe(r, "leader_validation_cut", cfg.rewards.leader_validation_cut);
        maybe(r, "ppoem_split", cfg.rewards.ppoem_split);
    }
    if (j.contains("market")) {
        const auto& m = j.at("market");
        maybe_coin(m, "ask_lo", cfg.market.ask_lo);
        maybe_coin(m, "ask_hi", cfg.market.ask_hi);
        maybe_coin(m, "bid_lo", cfg.market.bid_lo);
        maybe_coin(m, "bid_hi", cfg.market.bid_hi);
        maybe_coin(m, "endowment", cfg.market.endowment);
    }
    if (j.contains("queue")) {
        const auto& q = j.at("queue");
        maybe(q, "arrival", cfg.queue.arrival);
        maybe(q, "service", cfg.queue.service);
        maybe(q, "gain", cfg.queue.gain);
        maybe(q, "capacity", cfg.queue.capacity);
        maybe(q, "unit_cost", cfg.queue.unit_cost);
    }
    maybe(j, "mechanisms", cfg.mechanisms);
    maybe(j, "rounds", cfg.rounds);
    maybe(j, "elections", cfg.elections);
    maybe(j, "seed", cfg.seed);
    maybe(j, "welfare_buyer_grid", cfg.welfare_buyer_grid);
    maybe(j, "welfare_reps", cfg.welfare_reps);
    cfg.validate();
    return cfg;
}

CampaignConfig load_config(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("config: cannot open " + path);
    std::ostringstream buf;
    buf << file.rdbuf();
    return config_from_json_text(buf.str(), path);
}

std::string config_to_json_text(const CampaignConfig& cfg) {
    ordered_json j;
    j["dataset"]["path"] = cfg.dataset_path;
    j["dataset"]["format"]["customer"] = cfg.format.customer_col;
    j["dataset"]["format"]["timestamp"] = cfg.format.timestamp_col;
    j["dataset"]["format"]["consumption_kwh"] = cfg.format.consumption_col;
    j["dataset"]["format"]["generation_kwh"] = cfg.format.generation_col;
    j["allocation"] = cfg.allocation;
    if (cfg.thresholds.percentile_mode) {
        j["thresholds"] = {{"mode", "percentile"},
                           {"stable", cfg.thresholds.p_stable},
                           {"breakdown", cfg.thresholds.p_breakdown},
                           {"max", cfg.thresholds.p_max}};
    } else {
        j["thresholds"] = {{"mode", "absolute"},
                           {"stable_kwh", cfg.thresholds.absolute.stable_limit_kwh},
                           {"breakdown_kwh", cfg.thresholds.absolute.breakdown_kwh},
                           {"max_capacity_kwh", cfg.thresholds.absolute.max_capacity_kwh}};
    }
    j["privacy"] = {{"eps1", cfg.privacy.eps1},
                    {"eps2", cfg.privacy.eps2},
                    {"eps3_grid", cfg.privacy.eps3_grid},
                    {"string_length", cfg.privacy.string_length},
                    {"dq2_max_trade_kwh", cfg.privacy.dq2_max_trade_kwh}};
    j["rewards"] = {{"mr", coin_format(cfg.rewards.mr)},
                    {"leader_validation_cut", cfg.rewards.leader_validation_cut},
                    {"ppoem_split", cfg.rewards.ppoem_split}};
    j["market"] = {{"ask_lo", coin_format(cfg.market.ask_lo)},
                   {"ask_hi", coin_format(cfg.market.ask_hi)},
                   {"bid_lo", coin_format(cfg.market.bid_lo)},
                   {"bid_hi", coin_format(cfg.market.bid_hi)},
                   {"endowment", coin_format(cfg.market.endowment)}};
    j["queue"] = {{"arrival", cfg.queue.arrival},
                  {"service", cfg.queue.service},
                  {"gain", cfg.queue.gain},
                  {"capacity", cfg.queue.capacity},
                  {"unit_cost", cfg.queue.unit_cost}};
    j["mechanisms"] = cfg.mechanisms;
    j["rounds"] = cfg.rounds;
    j["elections"] = cfg.elections;
    j["seed"] = cfg.seed;
    j["welfare_buyer_grid"] = cfg.welfare_buyer_grid;
    j["welfare_reps"] = cfg.welfare_reps;
    return j.dump(2) + "\n";
}

std::string config_digest_hex(const CampaignConfig& cfg) {
    return hash_to_hex(sha256(config_to_json_text(cfg)));
}

} // namespace vppsim
