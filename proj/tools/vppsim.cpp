#include <CLI11.hpp>

#include "vppsim/campaign.hpp"
#include "vppsim/config.hpp"
#include "vppsim/report.hpp"
#include "vppsim/synth.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace vppsim;

int cmd_gen_data(const SynthSpec& spec, const std::string& out) {
    std::size_t rows = write_dataset_csv(spec, out);
    std::cout << "wrote " << rows << " rows to " << out << "\n";
    return 0;
}

int cmd_init_config(const std::string& dataset, const std::string& out) {
    CampaignConfig cfg;
    cfg.dataset_path = dataset;
    std::string text = config_to_json_text(cfg);
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out, std::ios::binary);
        f << text;
        std::cout << "wrote " << out << "\n";
    }
    return 0;
}

int cmd_ingest_check(const std::string& config_path) {
    CampaignConfig cfg = load_config(config_path);
    CampaignEngine engine(cfg);
    const LoadResult& d = engine.data();
    std::cout << "accepted rows:  " << d.accepted_rows << "\n";
    std::cout << "rejected rows:  " << d.rejected_rows << "\n";
    for (const auto& diag : d.diagnostics) std::cout << "  reject: " << diag << "\n";
    std::cout << "hour buckets:   " << engine.hour_count() << "\n";
    std::cout << "thresholds kwh: stable<=" << engine.thresholds().stable_limit_kwh
              << " breakdown<=" << engine.thresholds().breakdown_kwh
              << " max<=" << engine.thresholds().max_capacity_kwh << "\n";
    for (const auto& a : engine.assignment())
        std::cout << a.vpp_id << ": " << a.prosumer_ids.size() << " prosumers\n";
    return d.rejected_rows == 0 ? 0 : 2;
}

int cmd_run_round(const std::string& config_path, std::uint64_t round, const std::string& track_label) {
    CampaignConfig cfg = load_config(config_path);
    CampaignEngine engine(cfg);
    auto tracks = expand_tracks(cfg.mechanisms, cfg.privacy.eps3_grid);
    const TrackSpec* spec = nullptr;
    for (const auto& t : tracks)
        if (t.label == track_label) spec = &t;
    if (!spec) {
        std::cerr << "unknown track " << track_label << "; available:";
        for (const auto& t : tracks) std::cerr << " " << t.label;
        std::cerr << "\n";
        return 2;
    }
    WalletState wallets;
    if (auto a = apply_block(engine.genesis(), wallets); !a.ok) {
        std::cerr << "genesis apply failed: " << a.detail << "\n";
        return 1;
    }
    RoundInputs in = engine.round_inputs(round);
    MarketRound market = engine.run_market(in, *spec, wallets);
    std::cout << round_to_jsonl(market);
    ElectionRecord rec = engine.run_round_election(market, in, *spec);
    nlohmann::ordered_json e;
    e["election"] = {{"mechanism", rec.mechanism}, {"winner", rec.winner},   {"second", rec.second},
                     {"third", rec.third},         {"m_sum", rec.m_sum},     {"reward_winner", rec.reward_winner},
                     {"reward_second", rec.reward_second}, {"reward_third", rec.reward_third}};
    std::cout << e.dump() << "\n";
    return 0;
}

int cmd_run_campaign(const std::string& config_path, const std::string& out_dir,
                     std::uint64_t rounds_override, std::int64_t seed_override,
                     std::uint64_t elections_override, const std::vector<std::string>& mechanisms) {
    CampaignConfig cfg = load_config(config_path);
    if (rounds_override) cfg.rounds = rounds_override;
    if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
    if (elections_override) cfg.elections = elections_override;
    if (!mechanisms.empty()) cfg.mechanisms = mechanisms;
    cfg.validate();
    CampaignEngine engine(cfg);
    CampaignResult res = engine.run(out_dir);
    std::cout << res.summary_json;
    if (!res.ok)
        for (const auto& f : res.failures) std::cerr << "FAIL: " << f << "\n";
    return res.ok ? 0 : 1;
}

int cmd_analytics_sweep(const std::string& config_path, const std::string& out_dir) {
    CampaignConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    SweepReport rep = analytics_sweeps(cfg.queue, 0.0, cfg.seed);
    std::filesystem::create_directories(out_dir);
    auto write = [&](const char* name, const std::string& body) {
        std::ofstream f((std::filesystem::path(out_dir) / name).string(), std::ios::binary);
        f << body;
    };
    write("race.csv", rep.race_csv);
    write("convergence.csv", rep.convergence_csv);
    write("sojourn.csv", rep.sojourn_csv);
    write("queue.csv", rep.queue_csv);
    std::cout << (rep.pass ? "all sweep identities hold\n" : "sweep identities FAILED\n");
    for (const auto& f : rep.failures) std::cerr << "FAIL: " << f << "\n";
    return rep.pass ? 0 : 1;
}

int cmd_dp_audit(const std::string& config_path, const std::string& out_path) {
    CampaignConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    DpAuditOutput out = dp_audit_report(cfg.privacy);
    if (out_path.empty()) {
        std::cout << out.json;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        f << out.json;
        std::cout << "wrote " << out_path << "\n";
    }
    return out.pass ? 0 : 1;
}

int cmd_validate_chain(const std::string& chain_path, const std::string& manifest_path) {
    std::ifstream mf(manifest_path, std::ios::binary);
    if (!mf) {
        std::cerr << "cannot open manifest " << manifest_path << "\n";
        return 2;
    }
    nlohmann::json m = nlohmann::json::parse(mf);
    auto vpps = m.at("vpps").get<std::vector<std::string>>();
    auto seed = m.at("seed").get<std::uint64_t>();
    KeyRegistry registry = registry_for(vpps, seed);
    ValidationResult v = validate_chain_file(chain_path, registry);
    if (v.ok) {
        std::cout << "chain valid: " << chain_path << "\n";
        return 0;
    }
    std::cerr << "chain INVALID (" << reject_name(v.reason) << "): " << v.detail << "\n";
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic VPP energy-trading simulator"};
    app.require_subcommand(1);

    SynthSpec synth;
    std::string gen_out = "data/meters.csv";
    auto* gen = app.add_subcommand("gen-data", "write a synthetic smart-meter CSV");
    gen->add_option("--homes", synth.homes, "number of prosumers")->check(CLI::PositiveNumber);
    gen->add_option("--days", synth.days, "days of hourly readings")->check(CLI::PositiveNumber);
    gen->add_option("--start", synth.start_timestamp, "unix start timestamp");
    gen->add_option("--seed", synth.seed, "generator seed");
    gen->add_option("--out", gen_out, "output CSV path");

    std::string init_dataset = "data/meters.csv", init_out;
    auto* init = app.add_subcommand("init-config", "print or write the default config");
    init->add_option("--dataset", init_dataset, "dataset path to embed");
    init->add_option("--out", init_out, "write here instead of stdout");

    std::string config_path;
    auto* ingest = app.add_subcommand("ingest-check", "load the dataset and report acceptance");
    ingest->add_option("--config", config_path, "config JSON")->required();

    std::uint64_t round = 0;
    std::string track = "poem";
    auto* rr = app.add_subcommand("run-round", "run one market round and print its trades");
    rr->add_option("--config", config_path, "config JSON")->required();
    rr->add_option("--round", round, "round number (0-based)");
    rr->add_option("--track", track, "track label, e.g. poem or ppoem-0.1");

    std::string out_dir = "out";
    std::uint64_t rounds_override = 0, elections_override = 0;
    std::int64_t seed_override = -1;
    std::vector<std::string> mech_override;
    auto* rc = app.add_subcommand("run-campaign", "run every mechanism track and write reports");
    rc->add_option("--config", config_path, "config JSON")->required();
    rc->add_option("--out", out_dir, "output directory");
    rc->add_option("--rounds", rounds_override, "override config rounds");
    rc->add_option("--seed", seed_override, "override config seed");
    rc->add_option("--elections", elections_override, "override standalone election count");
    rc->add_option("--mechanism", mech_override, "restrict to these mechanisms (repeatable)");

    auto* sweep = app.add_subcommand("analytics-sweep", "write the closed-form vs simulation CSVs");
    sweep->add_option("--config", config_path, "config JSON (optional, defaults used otherwise)");
    sweep->add_option("--out", out_dir, "output directory");

    std::string audit_out;
    auto* audit = app.add_subcommand("dp-audit", "exact-distribution privacy audit");
    audit->add_option("--config", config_path, "config JSON (optional)");
    audit->add_option("--out", audit_out, "write JSON here instead of stdout");

    std::string chain_path, manifest_path;
    auto* vc = app.add_subcommand("validate-chain", "revalidate a chain file from its manifest");
    vc->add_option("--chain", chain_path, "chain JSONL file")->required();
    vc->add_option("--manifest", manifest_path, "manifest.json from the same run")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen_data(synth, gen_out);
        if (init->parsed()) return cmd_init_config(init_dataset, init_out);
        if (ingest->parsed()) return cmd_ingest_check(config_path);
        if (rr->parsed()) return cmd_run_round(config_path, round, track);
        if (rc->parsed())
            return cmd_run_campaign(config_path, out_dir, rounds_override, seed_override, elections_override,
                                    mech_override);
        if (sweep->parsed()) return cmd_analytics_sweep(config_path, out_dir);
        if (audit->parsed()) return cmd_dp_audit(config_path, audit_out);
        if (vc->parsed()) return cmd_validate_chain(chain_path, manifest_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
