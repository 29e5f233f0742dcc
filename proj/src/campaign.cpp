#include "vppsim/campaign.hpp"

#include "vppsim/privacy.hpp"
#include "vppsim/report.hpp"
#include "vppsim/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace vppsim {

namespace {

std::string eps_label(double eps) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", eps);
    return buf;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace

std::vector<TrackSpec> expand_tracks(const std::vector<std::string>& mechanisms,
                                     const std::vector<double>& eps3_grid) {
    std::vector<TrackSpec> tracks;
    for (const auto& m : mechanisms) {
        if (m == "ppoem") {
            for (double e : eps3_grid) tracks.push_back({"ppoem-" + eps_label(e), Mechanism::Ppoem, e});
        } else {
            tracks.push_back({m, mechanism_from_name(m), 0.0});
        }
    }
    return tracks;
}

KeyRegistry registry_for(const std::vector<std::string>& vpp_ids, std::uint64_t master_seed) {
    KeyRegistry registry;
    for (const auto& id : vpp_ids) registry.register_node(id, KeyRegistry::derive_token(id, master_seed));
    return registry;
}

CampaignEngine::CampaignEngine(CampaignConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    data_ = load_readings(cfg_.dataset_path, cfg_.format);

    std::set<std::string> id_set;
    for (const auto& r : data_.readings) id_set.insert(r.prosumer_id);
    std::vector<std::string> ids(id_set.begin(), id_set.end());
    assignment_ = assign_prosumers(ids, cfg_.allocation);
    for (std::size_t k = 0; k < assignment_.size(); ++k) {
        vpp_ids_.push_back(assignment_[k].vpp_id);
        vpp_index_[assignment_[k].vpp_id] = k;
        for (const auto& p : assignment_[k].prosumer_ids) vpp_of_[p] = assignment_[k].vpp_id;
    }

    hours_ = hour_starts(data_.readings);
    if (hours_.empty()) throw std::invalid_argument("campaign: dataset has no hour buckets");
    if (cfg_.thresholds.percentile_mode)
        thresholds_ = thresholds_from_history(hourly_total_load(data_.readings));
    else
        thresholds_ = cfg_.thresholds.absolute;
    thresholds_.validate();

    slices_.reserve(hours_.size());
    vpp_production_.assign(hours_.size(), std::vector<double>(vpp_ids_.size(), 0.0));
    vpp_consumption_.assign(hours_.size(), std::vector<double>(vpp_ids_.size(), 0.0));
    for (std::size_t h = 0; h < hours_.size(); ++h) {
        slices_.push_back(hour_slice(data_.readings, hours_[h]));
        const HourSlice& s = slices_.back();
        for (const auto& [pid, cons] : s.consumption) {
            std::size_t k = vpp_index_.at(vpp_of_.at(pid));
            vpp_consumption_[h][k] += cons;
        }
        for (const auto& [pid, gen] : s.generation) {
            std::size_t k = vpp_index_.at(vpp_of_.at(pid));
            vpp_production_[h][k] += gen;
        }
    }

    registry_ = registry_for(vpp_ids_, cfg_.seed);
    for (const auto& id : ids) endowments_.push_back({id, cfg_.market.endowment});
}

RoundInputs CampaignEngine::round_inputs(std::uint64_t round) const {
    RoundInputs in;
    in.round = round;
    std::size_t h = static_cast<std::size_t>(round % hours_.size());
    in.hour_start = hours_[h];
    const HourSlice& s = slices_[h];
    in.demand_kwh = s.total_consumption;
    in.production_kwh = vpp_production_[h];
    in.consumption_kwh = vpp_consumption_[h];

    RngStream book(cfg_.seed, "round-book", round);
    for (const auto& [pid, cons] : s.consumption) {
        double gen = 0.0;
        auto it = s.generation.find(pid);
        if (it != s.generation.end()) gen = it->second;
        double surplus = gen - cons;
        if (surplus > 1e-9) {
            Ask a;
            a.seller_id = pid;
            a.slot_id = pid + "@" + std::to_string(round);
            a.vpp_id = vpp_of_.at(pid);
            a.energy_kwh = surplus;
            a.ask_price = book.uniform_int(cfg_.market.ask_lo, cfg_.market.ask_hi);
            in.asks.push_back(std::move(a));
        } else if (surplus < -1e-9) {
            Bid b;
            b.buyer_id = pid;
            b.bid_price = book.uniform_int(cfg_.market.bid_lo, cfg_.market.bid_hi);
            in.bids.push_back(std::move(b));
        }
    }
    return in;
}

MarketRound CampaignEngine::run_market(const RoundInputs& inputs, const TrackSpec& spec,
                                       const WalletState& wallets) const {
    MarketRound round;
    round.round_index = inputs.round + 1; // ledger rounds are 1-based, genesis owns 0
    round.hour_start = inputs.hour_start;
    round.demand_kwh = inputs.demand_kwh;
    round.state = classify(inputs.demand_kwh, thresholds_);

    // admission: a buyer must be able to cover their own bid; one bid per
    // buyer per round, so an admitted buyer can never overdraw
    std::vector<Bid> admitted;
    admitted.reserve(inputs.bids.size());
    for (const auto& b : inputs.bids)
        if (b.bid_price <= wallets.balance(b.buyer_id)) admitted.push_back(b);

    AllocationResult alloc = allocate(inputs.asks, admitted);
    RngStream price_rng(cfg_.seed, spec.label + ":price", inputs.round);
    PrivacyBudget budget{cfg_.privacy.eps1, cfg_.privacy.eps2, spec.eps3 > 0 ? spec.eps3 : 1.0};
    for (const auto& a : alloc.winners) {
        Coin price = spec.mechanism == Mechanism::Ppoem
                         ? private_price(a.winning_bid, a.ask_price, budget, cfg_.privacy.string_length,
                                         price_rng)
                               .price
                         : price_poem(a);
        round.trades.push_back(settle(a, price, round.state));
    }
    round.unsold_slots = alloc.unsold_slots;
    return round;
}

ElectionRecord CampaignEngine::run_round_election(const MarketRound& round, const RoundInputs& inputs,
                                                  const TrackSpec& spec) const {
    EnergyCensus census;
    census.vpp_ids = vpp_ids_;
    census.energy_kwh.assign(vpp_ids_.size(), 0.0);
    for (const auto& [vpp, kwh] : round.energy_by_vpp()) census.energy_kwh[vpp_index_.at(vpp)] = kwh;

    ElectionParams params;
    params.mechanism = spec.mechanism;
    params.eps3 = spec.eps3;
    params.dq2 = cfg_.privacy.dq2_max_trade_kwh;
    params.m_sum = round.total_mining_fees();
    params.mr = cfg_.rewards.mr;
    params.prose_split = cfg_.rewards.ppoem_split == "prose";
    params.production_kwh = inputs.production_kwh;
    params.consumption_kwh = inputs.consumption_kwh;

    RngStream rng(cfg_.seed, spec.label + ":election", inputs.round);
    ElectionOutcome outcome = run_election(census, params, rng);

    ElectionRecord rec;
    rec.mechanism = mechanism_name(spec.mechanism);
    rec.reward_rule = spec.mechanism == Mechanism::Ppoem ? (params.prose_split ? "private_prose" : "private")
                                                         : "public";
    rec.eps3 = spec.mechanism == Mechanism::Ppoem ? spec.eps3 : 0.0;
    auto id_of = [&](int idx) { return idx >= 0 ? vpp_ids_[static_cast<std::size_t>(idx)] : std::string(); };
    rec.winner = id_of(outcome.podium.winner);
    rec.second = id_of(outcome.podium.second);
    rec.third = id_of(outcome.podium.third);
    rec.reward_winner = outcome.rewards.winner;
    rec.reward_second = outcome.rewards.second;
    rec.reward_third = outcome.rewards.third;
    rec.m_sum = params.m_sum;
    rec.mr = params.mr;
    rec.uniform_fallback = outcome.podium.uniform_fallback;
    return rec;
}

Block CampaignEngine::genesis() const { return make_genesis(endowments_); }

namespace {

struct LiveTrack {
    TrackSpec spec;
    Block parent;
    WalletState wallets;
    std::ofstream chain;
    std::ofstream timeline;
    TrackSummary sum;
    std::vector<int> winner_log;       // winner index per round, -1 on failure
    std::vector<double> energy_total;  // cumulative census per VPP
};

} // namespace

CampaignResult CampaignEngine::run(const std::string& out_dir) {
    namespace fs = std::filesystem;
    CampaignResult res;
    res.out_dir = out_dir;
    auto fail = [&](const std::string& why) {
        res.ok = false;
        res.failures.push_back(why);
    };

    fs::create_directories(fs::path(out_dir) / "chains");
    fs::create_directories(fs::path(out_dir) / "reports");
    auto chain_path = [&](const std::string& label) {
        return (fs::path(out_dir) / "chains" / (label + ".jsonl")).string();
    };

    const std::vector<TrackSpec> tracks = expand_tracks(cfg_.mechanisms, cfg_.privacy.eps3_grid);
    const std::size_t nv = vpp_ids_.size();
    Block gen = genesis();
    if (auto v = validate_genesis(gen); !v.ok) fail("genesis: " + std::string(reject_name(v.reason)));

    std::vector<LiveTrack> live;
    live.reserve(tracks.size());
    for (const auto& spec : tracks) {
        LiveTrack t;
        t.spec = spec;
        t.parent = gen;
        if (auto a = apply_block(gen, t.wallets); !a.ok) fail(spec.label + ": genesis apply: " + a.detail);
        t.chain.open(chain_path(spec.label), std::ios::binary | std::ios::trunc);
        t.chain << chain_to_jsonl({gen});
        t.timeline.open((fs::path(out_dir) / "reports" / ("timeline-" + spec.label + ".csv")).string(),
                        std::ios::binary | std::ios::trunc);
        t.timeline << "round,hour_start,state,fee_pct,trades,unsold,traded_kwh,tx_fees,mining_fees,winner\n";
        t.sum.label = spec.label;
        t.sum.wins.assign(nv, 0);
        t.sum.seconds.assign(nv, 0);
        t.sum.thirds.assign(nv, 0);
        t.sum.rewards.assign(nv, 0);
        t.energy_total.assign(nv, 0.0);
        live.push_back(std::move(t));
    }

    std::vector<double> prod_total(nv, 0.0), cons_total(nv, 0.0);
    for (std::uint64_t r = 0; r < cfg_.rounds; ++r) {
        RoundInputs in = round_inputs(r);
        for (std::size_t k = 0; k < nv; ++k) {
            prod_total[k] += in.production_kwh[k];
            cons_total[k] += in.consumption_kwh[k];
        }
        for (LiveTrack& t : live) {
            MarketRound round = run_market(in, t.spec, t.wallets);
            ElectionRecord rec = run_round_election(round, in, t.spec);
            Block blk;
            try {
                blk = build_block(t.parent, round, rec, registry_);
            } catch (const std::exception& e) {
                fail(t.spec.label + " round " + std::to_string(r) + ": build: " + e.what());
                t.winner_log.push_back(-1);
                continue;
            }
            if (auto v = validate_block(blk, t.parent, registry_); !v.ok) {
                fail(t.spec.label + " round " + std::to_string(r) + ": validate: " +
                     std::string(reject_name(v.reason)) + " " + v.detail);
                t.winner_log.push_back(-1);
                continue;
            }
            if (auto a = apply_block(blk, t.wallets); !a.ok) {
                fail(t.spec.label + " round " + std::to_string(r) + ": apply: " + a.detail);
                t.winner_log.push_back(-1);
                continue;
            }
            t.chain << chain_to_jsonl({blk});

            double traded = 0.0;
            for (const auto& tr : blk.trades) traded += tr.energy_kwh;
            Coin tx = round.total_tx_fees(), mining = round.total_mining_fees();
            t.timeline << blk.round_index << "," << round.hour_start << "," << state_name(blk.state) << ","
                       << blk.fee_pct << "," << blk.trades.size() << "," << blk.unsold_slots.size() << ","
                       << fmt_double(traded) << "," << coin_format(tx) << "," << coin_format(mining) << ","
                       << rec.winner << "\n";
            ++t.sum.blocks;
            t.sum.trades += blk.trades.size();
            t.sum.unsold += blk.unsold_slots.size();
            t.sum.traded_kwh += traded;
            t.sum.tx_fees += tx;
            t.sum.mining_fees += mining;
            t.sum.minted += rec.mr;
            if (rec.uniform_fallback) ++t.sum.fallback_rounds;
            int widx = -1;
            if (!rec.winner.empty()) {
                widx = static_cast<int>(vpp_index_.at(rec.winner));
                ++t.sum.wins[static_cast<std::size_t>(widx)];
                t.sum.rewards[static_cast<std::size_t>(widx)] += rec.reward_winner;
            }
            if (!rec.second.empty()) {
                std::size_t i = vpp_index_.at(rec.second);
                ++t.sum.seconds[i];
                t.sum.rewards[i] += rec.reward_second;
            }
            if (!rec.third.empty()) {
                std::size_t i = vpp_index_.at(rec.third);
                ++t.sum.thirds[i];
                t.sum.rewards[i] += rec.reward_third;
            }
            t.winner_log.push_back(widx);
            for (const auto& [vpp, kwh] : round.energy_by_vpp())
                t.energy_total[vpp_index_.at(vpp)] += kwh;
            t.parent = std::move(blk);
        }
    }

    for (LiveTrack& t : live) {
        t.chain.close();
        t.timeline.close();
        if (auto v = validate_chain_file(chain_path(t.spec.label), registry_); v.ok)
            t.sum.revalidated = true;
        else
            fail(t.spec.label + ": chain revalidation: " + std::string(reject_name(v.reason)) + " " + v.detail);
        if (!t.wallets.conserved()) fail(t.spec.label + ": final conservation check failed");
    }

    // campaign win frequencies
    {
        std::ofstream f((fs::path(out_dir) / "reports" / "win_frequency.csv").string(), std::ios::binary);
        f << "track,vpp,wins,seconds,thirds,win_share\n";
        for (const LiveTrack& t : live)
            for (std::size_t k = 0; k < nv; ++k)
                f << t.spec.label << "," << vpp_ids_[k] << "," << t.sum.wins[k] << "," << t.sum.seconds[k]
                  << "," << t.sum.thirds[k] << ","
                  << fmt_double(t.sum.blocks ? static_cast<double>(t.sum.wins[k]) / t.sum.blocks : 0.0)
                  << "\n";
    }
    {
        std::ofstream f((fs::path(out_dir) / "reports" / "rewards.csv").string(), std::ios::binary);
        f << "track,vpp,reward_coins\n";
        for (const LiveTrack& t : live)
            for (std::size_t k = 0; k < nv; ++k)
                f << t.spec.label << "," << vpp_ids_[k] << "," << coin_format(t.sum.rewards[k]) << "\n";
    }

    // standalone election tallies on each track's cumulative census,
    // observed frequencies against the analytic winner distribution
    {
        std::ofstream f((fs::path(out_dir) / "reports" / "election_frequency.csv").string(), std::ios::binary);
        f << "track,vpp,expected_share,observed_share,wins,elections\n";
        for (LiveTrack& t : live) {
            EnergyCensus census;
            census.vpp_ids = vpp_ids_;
            census.energy_kwh = t.energy_total;
            ElectionParams params;
            params.mechanism = t.spec.mechanism;
            params.eps3 = t.spec.eps3;
            params.dq2 = cfg_.privacy.dq2_max_trade_kwh;
            params.m_sum = t.sum.blocks ? t.sum.mining_fees / static_cast<Coin>(t.sum.blocks) : 0;
            params.mr = cfg_.rewards.mr;
            params.prose_split = cfg_.rewards.ppoem_split == "prose";
            params.production_kwh = prod_total;
            params.consumption_kwh = cons_total;
            CampaignTally tally = run_elections(census, params, cfg_.elections,
                                                cfg_.seed ^ fnv1a64("tally:" + t.spec.label), Exec::OpenMP);
            std::vector<double> expected(nv, 0.0);
            switch (t.spec.mechanism) {
                case Mechanism::Poem: {
                    double total = census.total();
                    for (std::size_t k = 0; k < nv; ++k)
                        expected[k] = total > 0 ? census.energy_kwh[k] / total : 1.0 / nv;
                    break;
                }
                case Mechanism::Ppoem:
                    expected = ppoem_distribution(census, t.spec.eps3, params.dq2);
                    break;
                case Mechanism::Poa:
                    expected.assign(nv, 1.0 / nv);
                    break;
                case Mechanism::Poe: {
                    double total = 0.0;
                    for (std::size_t k = 0; k < nv; ++k) {
                        expected[k] = 1.0 / (std::fabs(prod_total[k] - cons_total[k]) + kPoeDelta);
                        total += expected[k];
                    }
                    for (auto& e : expected) e /= total;
                    break;
                }
            }
            for (std::size_t k = 0; k < nv; ++k)
                f << t.spec.label << "," << vpp_ids_[k] << "," << fmt_double(expected[k]) << ","
                  << fmt_double(static_cast<double>(tally.wins[k]) / tally.elections) << "," << tally.wins[k]
                  << "," << tally.elections << "\n";
        }
    }

    // analytic sweeps, welfare curve, privacy audit
    double mean_tx_fee = 0.0;
    if (!live.empty() && live.front().sum.trades > 0)
        mean_tx_fee = coin_to_double(live.front().sum.tx_fees) / static_cast<double>(live.front().sum.trades);
    SweepReport sweeps = analytics_sweeps(cfg_.queue, cfg_.rewards.leader_validation_cut * mean_tx_fee,
                                          cfg_.seed);
    if (!sweeps.pass)
        for (const auto& w : sweeps.failures) fail("analytics: " + w);
    WelfareReport welfare = welfare_sweep(cfg_.market, cfg_.privacy, cfg_.welfare_buyer_grid,
                                          cfg_.welfare_reps, cfg_.seed);
    if (!welfare.seller_welfare_monotone) fail("welfare: seller welfare not monotone in buyer count");
    DpAuditOutput audit = dp_audit_report(cfg_.privacy);
    if (!audit.pass) fail("privacy audit: a selector exceeded its epsilon bound");
    auto write_text = [&](const char* name, const std::string& body) {
        std::ofstream f((fs::path(out_dir) / "reports" / name).string(), std::ios::binary);
        f << body;
    };
    write_text("race.csv", sweeps.race_csv);
    write_text("convergence.csv", sweeps.convergence_csv);
    write_text("sojourn.csv", sweeps.sojourn_csv);
    write_text("queue.csv", sweeps.queue_csv);
    write_text("welfare_vs_buyers.csv", welfare.csv);
    write_text("dp_audit.json", audit.json);

    // winning-band chain over the public track's winner history
    nlohmann::ordered_json win_state = nlohmann::ordered_json::object();
    {
        const LiveTrack* poem = nullptr;
        for (const LiveTrack& t : live)
            if (t.spec.mechanism == Mechanism::Poem) poem = &t;
        const std::size_t window = 100;
        if (poem && poem->winner_log.size() >= 2 * window) {
            std::size_t top = 0;
            for (std::size_t k = 1; k < nv; ++k)
                if (poem->sum.wins[k] > poem->sum.wins[top]) top = k;
            std::vector<double> shares;
            for (std::size_t w0 = 0; w0 + window <= poem->winner_log.size(); w0 += window) {
                int hits = 0;
                for (std::size_t i = w0; i < w0 + window; ++i)
                    if (poem->winner_log[i] == static_cast<int>(top)) ++hits;
                shares.push_back(100.0 * hits / window);
            }
            WinStateChain chain = win_state_chain_from_shares(shares);
            double wt = mean_winning_sojourn(chain, {0});
            std::ostringstream csv;
            csv << "state,p_to_T1,p_to_T2,p_to_T3,pi\n";
            const char* names[3] = {"T1", "T2", "T3"};
            for (int i = 0; i < 3; ++i)
                csv << names[i] << "," << fmt_double(chain.p[i][0]) << "," << fmt_double(chain.p[i][1])
                    << "," << fmt_double(chain.p[i][2]) << "," << fmt_double(chain.pi[i]) << "\n";
            write_text("win_state_chain.csv", csv.str());
            win_state["leader"] = vpp_ids_[top];
            win_state["windows"] = shares.size();
            win_state["window_rounds"] = window;
            win_state["pi"] = {chain.pi[0], chain.pi[1], chain.pi[2]};
            win_state["degenerate"] = chain.degenerate;
            win_state["mean_winning_sojourn_windows"] =
                std::isinf(wt) ? nlohmann::ordered_json("inf") : nlohmann::ordered_json(wt);
        } else {
            win_state["skipped"] = "needs a public track with at least 200 rounds";
        }
    }

    // manifest + summary
    {
        nlohmann::ordered_json m;
        m["config_digest"] = config_digest_hex(cfg_);
        m["seed"] = cfg_.seed;
        m["dataset"] = {{"path", cfg_.dataset_path},
                        {"accepted_rows", data_.accepted_rows},
                        {"rejected_rows", data_.rejected_rows},
                        {"prosumers", vpp_of_.size()},
                        {"hours", hours_.size()}};
        m["allocation"] = cfg_.allocation;
        m["vpps"] = vpp_ids_;
        nlohmann::ordered_json tr = nlohmann::ordered_json::array();
        for (const auto& spec : tracks) tr.push_back(spec.label);
        m["tracks"] = tr;
        m["rounds"] = cfg_.rounds;
        m["elections_per_tally"] = cfg_.elections;
        m["thresholds"] = {{"stable_limit_kwh", thresholds_.stable_limit_kwh},
                           {"breakdown_kwh", thresholds_.breakdown_kwh},
                           {"max_capacity_kwh", thresholds_.max_capacity_kwh}};
        std::ofstream f((fs::path(out_dir) / "manifest.json").string(), std::ios::binary);
        f << m.dump(2) << "\n";
    }
    {
        nlohmann::ordered_json s;
        s["ok"] = res.ok;
        s["failures"] = res.failures;
        s["rounds"] = cfg_.rounds;
        s["mean_tx_fee_coins"] = mean_tx_fee;
        s["analytics_pass"] = sweeps.pass;
        s["welfare_monotone"] = welfare.seller_welfare_monotone;
        s["privacy_audit_pass"] = audit.pass;
        s["win_state"] = win_state;
        nlohmann::ordered_json tr = nlohmann::ordered_json::array();
        for (const LiveTrack& t : live) {
            nlohmann::ordered_json tj;
            tj["label"] = t.spec.label;
            tj["blocks"] = t.sum.blocks;
            tj["trades"] = t.sum.trades;
            tj["unsold"] = t.sum.unsold;
            tj["traded_kwh"] = t.sum.traded_kwh;
            tj["tx_fees"] = coin_format(t.sum.tx_fees);
            tj["mining_fees"] = coin_format(t.sum.mining_fees);
            tj["minted"] = coin_format(t.sum.minted);
            tj["fallback_rounds"] = t.sum.fallback_rounds;
            tj["revalidated"] = t.sum.revalidated;
            nlohmann::ordered_json wins = nlohmann::ordered_json::object();
            for (std::size_t k = 0; k < nv; ++k) wins[vpp_ids_[k]] = t.sum.wins[k];
            tj["wins"] = wins;
            tr.push_back(tj);
            res.tracks.push_back(t.sum);
        }
        s["tracks"] = tr;
        res.summary_json = s.dump(2) + "\n";
        std::ofstream f((fs::path(out_dir) / "summary.json").string(), std::ios::binary);
        f << res.summary_json;
    }
    return res;
}

ValidationResult validate_chain_file(const std::string& path, const KeyRegistry& registry) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return ValidationResult::fail(Reject::Structure, "cannot open " + path);
    std::string line;
    Block parent;
    WalletState wallets;
    bool have_parent = false;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<Block> one;
        try {
            one = chain_from_jsonl(line);
        } catch (const std::exception& e) {
            return ValidationResult::fail(Reject::Structure,
                                          "line " + std::to_string(line_no) + ": " + e.what());
        }
        if (one.size() != 1)
            return ValidationResult::fail(Reject::Structure, "line " + std::to_string(line_no) + ": not one block");
        Block& b = one.front();
        ValidationResult v = have_parent ? validate_block(b, parent, registry) : validate_genesis(b);
        if (!v.ok) {
            v.detail = "line " + std::to_string(line_no) + ": " + v.detail;
            return v;
        }
        if (auto a = apply_block(b, wallets); !a.ok) {
            a.detail = "line " + std::to_string(line_no) + ": " + a.detail;
            return a;
        }
        parent = std::move(b);
        have_parent = true;
    }
    if (!have_parent) return ValidationResult::fail(Reject::Structure, "empty chain file");
    return ValidationResult::pass();
}

} // namespace vppsim
