// Acceptance gate: one line per criterion, every tolerance pinned in the
// line itself. Exit code 0 only when every criterion passes.

#include "vppsim/analytics.hpp"
#include "vppsim/auction.hpp"
#include "vppsim/election.hpp"
#include "vppsim/ledger.hpp"
#include "vppsim/privacy.hpp"
#include "vppsim/report.hpp"
#include "vppsim/rng.hpp"
#include "vppsim/serialize.hpp"
#include "vppsim/system_state.hpp"

#include "oracles/oracles.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

using namespace vppsim;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    if (!pass) ++g_failures;
    std::printf("%s %2d %s: %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    std::fflush(stdout);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// ---------------------------------------------------------------- 1 ----

void criterion_fee_schedule() {
    StateThresholds th{100.0, 200.0, 300.0};
    struct Probe {
        double demand;
        StateLabel label;
        int pct;
    };
    const Probe probes[] = {
        {0.0, StateLabel::Stable, 10},      {50.0, StateLabel::Stable, 10},
        {100.0, StateLabel::Stable, 10},    // boundary -> less severe state
        {100.5, StateLabel::Warning, 7},    {200.0, StateLabel::Warning, 7},
        {250.0, StateLabel::Breakdown, 3},  {300.0, StateLabel::Breakdown, 3},
        {300.0001, StateLabel::Shutdown, 1}, {1e9, StateLabel::Shutdown, 1},
    };
    bool ok = true;
    std::string bad;
    for (const Probe& p : probes) {
        SystemState s = classify(p.demand, th);
        if (s.label != p.label || s.fee_pct != p.pct) {
            ok = false;
            bad = "demand " + fmt(p.demand) + " -> " + state_name(s.label) + "/" + std::to_string(s.fee_pct);
            break;
        }
        double want = p.pct / 100.0;
        if (s.tx_fee_ratio() != want || s.mining_fee_ratio() != want) {
            ok = false;
            bad = "fee ratio not exact at " + fmt(p.demand);
            break;
        }
    }
    report(1, "state fee schedule {0.10,0.07,0.03,0.01}, boundaries to the milder state (exact)", ok,
           ok ? "9/9 probes exact, boundary demands 100/200/300 stay in the milder band" : bad);
}

// ---------------------------------------------------------------- 2 ----

std::vector<oracles::ClearedTrade> as_cleared(const AllocationResult& r) {
    std::vector<oracles::ClearedTrade> v;
    v.reserve(r.winners.size());
    for (const auto& w : r.winners) v.push_back({w.slot_id, w.winner_id, w.winning_bid});
    std::sort(v.begin(), v.end());
    return v;
}

void criterion_market_oracle() {
    RngStream rng(101, "acceptance-markets", 0);
    int mismatches = 0;
    const int n_markets = 1'000;
    for (int m = 0; m < n_markets; ++m) {
        int sellers = 1 + static_cast<int>(rng.uniform_below(6));
        int buyers = static_cast<int>(rng.uniform_below(7)); // 0..6
        std::vector<Ask> asks;
        std::vector<Bid> bids;
        for (int s = 0; s < sellers; ++s)
            asks.push_back({"seller" + std::to_string(s), "slot" + std::to_string(s),
                            "VPP" + std::to_string(1 + s % 3), 0.5 + 0.25 * s,
                            coins(1) + static_cast<Coin>(rng.uniform_below(8)) * kCoin});
        for (int b = 0; b < buyers; ++b)
            bids.push_back({"buyer" + std::to_string(static_cast<int>(rng.uniform_below(6))), "",
                            coins(1) + static_cast<Coin>(rng.uniform_below(10)) * kCoin});
        auto mine = as_cleared(allocate(asks, bids));
        auto oracle = oracles::clear_market(asks, bids);
        std::sort(oracle.begin(), oracle.end());
        if (mine != oracle) ++mismatches;
    }
    report(2, "double-auction clearing vs brute-force oracle (1000 seeded markets <= 6x6)", mismatches == 0,
           std::to_string(n_markets - mismatches) + "/" + std::to_string(n_markets) +
               " markets identical, 0 mismatches required");
}

// ---------------------------------------------------------------- 3 ----

EnergyCensus paper_census() {
    EnergyCensus c;
    for (int k = 1; k <= 10; ++k) c.vpp_ids.push_back("VPP" + std::to_string(k));
    c.energy_kwh = {3, 3, 4, 5, 5, 10, 10, 10, 20, 30};
    return c;
}

void criterion_public_election() {
    const std::uint64_t n = 10'000;
    bool ok = true;
    std::string detail;
    double worst = 0.0;

    { // two-VPP census with shares 0.3 / 0.7
        EnergyCensus c;
        c.vpp_ids = {"VPP1", "VPP2"};
        c.energy_kwh = {0.3, 0.7};
        ElectionParams params;
        params.mechanism = Mechanism::Poem;
        CampaignTally t = run_elections(c, params, n, 3001, Exec::OpenMP);
        double dev1 = std::fabs(static_cast<double>(t.wins[0]) / n - 0.3);
        double dev2 = std::fabs(static_cast<double>(t.wins[1]) / n - 0.7);
        worst = std::max({worst, dev1, dev2});
        if (dev1 > 0.02 || dev2 > 0.02) ok = false;
    }
    { // ten-VPP census from the default allocation, shares S_k / 100
        EnergyCensus c = paper_census();
        ElectionParams params;
        params.mechanism = Mechanism::Poem;
        CampaignTally t = run_elections(c, params, n, 3002, Exec::OpenMP);
        std::uint64_t best = 0;
        for (std::size_t k = 0; k < 10; ++k) {
            double dev = std::fabs(static_cast<double>(t.wins[k]) / n - c.energy_kwh[k] / 100.0);
            worst = std::max(worst, dev);
            if (dev > 0.02) ok = false;
            if (t.wins[k] > t.wins[best]) best = k;
        }
        if (best != 9) {
            ok = false;
            detail = "; biggest VPP did not win most (VPP" + std::to_string(best + 1) + " did)";
        }
    }
    report(3, "public election frequencies (10000 draws per census, tol +-0.02 absolute)", ok,
           "max |freq - S_k/S_sum| = " + fmt(worst) + " over both censuses; 30 kWh VPP wins most" + detail);
}

// ---------------------------------------------------------------- 4 ----

void criterion_private_election() {
    EnergyCensus c = paper_census();
    const double dq2 = 0.45;
    const std::uint64_t n = 10'000;
    const std::array<double, 3> eps_grid = {0.1, 0.01, 0.001};
    std::array<std::uint64_t, 3> spreads{};
    std::array<double, 3> tv{};
    for (std::size_t i = 0; i < 3; ++i) {
        ElectionParams params;
        params.mechanism = Mechanism::Ppoem;
        params.eps3 = eps_grid[i];
        params.dq2 = dq2;
        CampaignTally t = run_elections(c, params, n, 4001, Exec::OpenMP);
        spreads[i] = t.spread();
        auto p = ppoem_distribution(c, eps_grid[i], dq2);
        double d = 0.0;
        for (double pi : p) d += std::fabs(pi - 0.1);
        tv[i] = 0.5 * d;
    }
    bool spread_ok = spreads[0] > spreads[1] && spreads[1] > spreads[2];
    bool tv_ok = tv[0] > tv[1] && tv[1] > tv[2];
    report(4, "private election anonymity grows as eps3 shrinks (10000 draws, dq2=0.45)", spread_ok && tv_ok,
           "win-count spread " + std::to_string(spreads[0]) + " > " + std::to_string(spreads[1]) + " > " +
               std::to_string(spreads[2]) + "; TV-to-uniform " + fmt(tv[0]) + " > " + fmt(tv[1]) + " > " +
               fmt(tv[2]));
}

// ---------------------------------------------------------------- 5 ----

void criterion_baselines() {
    const std::uint64_t n = 10'000;
    EnergyCensus c = paper_census();

    ElectionParams poa;
    poa.mechanism = Mechanism::Poa;
    CampaignTally ta = run_elections(c, poa, n, 5001, Exec::OpenMP);
    double chi2 = oracles::chi_square_uniform(ta.wins);
    const double crit = 21.666; // chi-square(9 dof) upper 1% point
    bool poa_ok = chi2 < crit;

    ElectionParams poe;
    poe.mechanism = Mechanism::Poe;
    for (int k = 0; k < 10; ++k) {
        poe.production_kwh.push_back(50.0);
        poe.consumption_kwh.push_back(50.0 + 0.5 + 1.5 * k); // VPP1 best balanced, VPP10 worst
    }
    CampaignTally te = run_elections(c, poe, n, 5002, Exec::OpenMP);
    bool poe_ok = te.wins[0] > te.wins[9];

    report(5, "authority baseline uniform (chi-square alpha=0.01), estimation baseline ranks balance",
           poa_ok && poe_ok,
           "chi2 = " + fmt(chi2) + " < " + fmt(crit) + "; balanced VPP1 wins " + std::to_string(te.wins[0]) +
               " vs VPP10 " + std::to_string(te.wins[9]));
}

// ---------------------------------------------------------------- 6 ----

void criterion_dp_audit() {
    PrivacyConfig privacy; // eps3 grid {0.1, 0.01, 0.001}, dq2 = 5
    DpAuditOutput out = dp_audit_report(privacy);
    double worst_margin = -1e300;
    std::string rows;
    auto j = nlohmann::json::parse(out.json);
    for (const auto& row : j.at("miner_selection")) {
        double ratio = row.at("max_abs_log_ratio").get<double>();
        double bound = row.at("bound").get<double>();
        worst_margin = std::max(worst_margin, ratio - bound);
        rows += fmt(ratio) + "<=" + fmt(bound) + " ";
    }
    report(6, "exact-distribution privacy audit on the 5-VPP grid (slack 1e-9)", out.pass,
           "max_abs_log_ratio per eps3: " + rows + "(price selection included), worst margin " +
               fmt(worst_margin));
}

// ---------------------------------------------------------------- 7 ----

void criterion_price_range() {
    RngStream rng(7007, "acceptance-price", 0);
    PrivacyBudget budget{1.0, 1.0, 0.1};
    const int n = 100'000;
    int violations = 0;
    for (int i = 0; i < n; ++i) {
        Coin ask = 1'000'000 + static_cast<Coin>(rng.uniform_below(8'000'000));
        Coin bid = ask + 1 + static_cast<Coin>(rng.uniform_below(6'000'000));
        Coin price = private_price(bid, ask, budget, 16, rng).price;
        if (price <= ask || price > bid) ++violations;
    }
    report(7, "private price stays inside (ask, bid] (100000 calls)", violations == 0,
           std::to_string(violations) + " out-of-range outputs (0 allowed)");
}

// ---------------------------------------------------------------- 8 ----

void criterion_reward_conservation() {
    RngStream rng(8008, "acceptance-rewards", 0);
    const int n = 10'000;
    int bad = 0;
    for (int i = 0; i < n; ++i) {
        Coin m_sum = rng.uniform_int(0, 50'000'000);
        Coin mr = rng.uniform_int(0, 1'000'000'000);
        if (reward_public(m_sum, mr).total() != m_sum + mr) ++bad;
        if (reward_private(m_sum, mr, rng).total() != m_sum + mr) ++bad;
    }
    report(8, "reward splits conserve RW+RS+RT == MR+M_sum (10000 random pairs, tol 1e-9 coins)", bad == 0,
           std::to_string(bad) + " violations across both rules (integer-exact)");
}

// ---------------------------------------------------------------- 9 ----

struct AcceptanceChain {
    KeyRegistry reg;
    std::vector<Block> blocks; // [0] = genesis
};

AcceptanceChain build_chain(int n_blocks) {
    AcceptanceChain c;
    std::vector<std::string> vpps = {"VPP1", "VPP2", "VPP3"};
    for (const auto& id : vpps) c.reg.register_node(id, KeyRegistry::derive_token(id, 909));
    std::vector<Endowment> endow;
    for (int p = 0; p < 6; ++p) endow.push_back({"prosumer" + std::to_string(p), coins(100'000)});
    c.blocks.push_back(make_genesis(endow));

    StateThresholds th{100.0, 200.0, 300.0};
    const double demands[] = {50.0, 150.0, 250.0, 350.0};
    for (int r = 1; r <= n_blocks; ++r) {
        MarketRound round;
        round.round_index = static_cast<std::uint64_t>(r);
        round.hour_start = 3'600 * r;
        round.demand_kwh = demands[r % 4];
        round.state = classify(round.demand_kwh, th);
        int n_trades = 1 + r % 3;
        for (int t = 0; t < n_trades; ++t) {
            Allocation a;
            a.slot_id = "r" + std::to_string(r) + "s" + std::to_string(t);
            a.seller_id = "prosumer" + std::to_string(t % 3);
            a.winner_id = "prosumer" + std::to_string(3 + (t + r) % 3);
            a.vpp_id = vpps[static_cast<std::size_t>((r + t) % 3)];
            a.energy_kwh = 0.5 + 0.25 * t;
            a.ask_price = coins(2 + (r + t) % 3);
            a.winning_bid = a.ask_price + coins(1 + r % 4);
            round.trades.push_back(settle(a, a.winning_bid, round.state));
        }
        ElectionRecord rec;
        rec.mechanism = "poem";
        rec.reward_rule = "public";
        rec.winner = round.trades[0].vpp_id; // a VPP that provably traded
        for (const auto& id : vpps) {
            if (id == rec.winner) continue;
            if (rec.second.empty())
                rec.second = id;
            else
                rec.third = id;
        }
        rec.m_sum = round.total_mining_fees();
        rec.mr = coins(500);
        RewardSplit split = reward_public(rec.m_sum, rec.mr);
        rec.reward_winner = split.winner;
        rec.reward_second = split.second;
        rec.reward_third = split.third;
        c.blocks.push_back(build_block(c.blocks.back(), round, rec, c.reg));
    }
    return c;
}

void criterion_ledger_integrity() {
    AcceptanceChain c = build_chain(100);
    bool chain_ok = validate_chain(c.blocks, c.reg).ok;

    // wallet replay must conserve after every block
    WalletState w;
    bool apply_ok = true;
    for (const Block& b : c.blocks)
        if (!apply_block(b, w).ok || !w.conserved()) apply_ok = false;

    // 1000 sampled single-byte mutations, every one must be detected
    RngStream rng(909, "acceptance-mutations", 0);
    int undetected = 0;
    for (int m = 0; m < 1'000; ++m) {
        std::size_t idx = 1 + rng.uniform_below(100);
        std::vector<std::uint8_t> bytes = encode_block(c.blocks[idx]);
        std::size_t at = rng.uniform_below(bytes.size());
        bytes[at] ^= static_cast<std::uint8_t>(1 + rng.uniform_below(255));
        bool caught = false;
        try {
            Block mutated = decode_block(bytes);
            caught = !validate_block(mutated, c.blocks[idx - 1], c.reg).ok;
        } catch (const DecodeError&) {
            caught = true;
        }
        if (!caught) ++undetected;
    }

    // fork-freedom: a second child of block 49 cannot extend the chain
    Block alt;
    {
        MarketRound round;
        round.round_index = c.blocks[50].round_index;
        round.hour_start = 0;
        round.demand_kwh = 42.0;
        round.state = SystemState{StateLabel::Stable, 10};
        ElectionRecord rec;
        rec.mechanism = "poa";
        rec.reward_rule = "public";
        rec.winner = "VPP1";
        rec.second = "VPP2";
        rec.third = "VPP3";
        rec.m_sum = 0;
        rec.mr = coins(500);
        RewardSplit split = reward_public(0, rec.mr);
        rec.reward_winner = split.winner;
        rec.reward_second = split.second;
        rec.reward_third = split.third;
        alt = build_block(c.blocks[49], round, rec, c.reg);
    }
    bool alt_disjoint = alt.block_hash != c.blocks[50].block_hash;
    std::vector<Block> forked = c.blocks;
    forked[50] = alt; // same height, different block: the rest of the chain must refuse it
    bool fork_rejected = !validate_chain(forked, c.reg).ok;

    bool ok = chain_ok && apply_ok && undetected == 0 && alt_disjoint && fork_rejected;
    report(9, "ledger integrity on a 100-block chain (1000 single-byte mutations)", ok,
           std::string(chain_ok ? "chain valid" : "CHAIN INVALID") + ", wallets conserved after every block, " +
               std::to_string(1000 - undetected) + "/1000 mutations detected, fork at height 50 rejected");
}

// --------------------------------------------------------------- 10 ----

void criterion_race() {
    double worst = 0.0;
    int instances = 0;
    bool ok = true;
    for (int a = 1; a <= 12; ++a)
        for (int b = 0; a + b <= 12; ++b)
            for (int e = 0; e <= 1; ++e) {
                if (a < b + e || a + b <= e) continue;
                double closed = race_probability({static_cast<double>(a), static_cast<double>(b),
                                                  static_cast<double>(e)});
                double enumerated = oracles::ballot_strictly_ahead(a - e, b);
                worst = std::max(worst, std::fabs(closed - enumerated));
                ++instances;
            }
    if (worst > 1e-9) ok = false;
    // trivial cases must be exact, not just close
    if (race_probability({7.0, 0.0, 0.0}) != 1.0) ok = false;
    if (race_probability({5.0, 4.0, 1.0}) != 0.0) ok = false;
    report(10, "mining-race closed form vs ballot enumeration (all Sx+Sy <= 12, tol 1e-9)", ok,
           std::to_string(instances) + " instances, max |closed - enumerated| = " + fmt(worst) +
               "; unopposed race exactly 1, tied race exactly 0");
}

// --------------------------------------------------------------- 11 ----

void criterion_market_share() {
    RngStream rng(1111, "acceptance-share", 0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        double p_xy = rng.uniform_range(0.05, 0.95);
        double p_yx = rng.uniform_range(0.05, 0.95);
        double closed = steady_market_share({p_xy, p_yx});
        double iterated = oracles::iterate_share(p_xy, p_yx, 0.3, 10'000);
        worst = std::max(worst, std::fabs(closed - iterated));
    }
    // nine canonical pairs; the symmetric one must converge fastest
    const std::array<MarketTransitions, 9> pairs = {{{0.5, 0.5},
                                                     {0.1, 0.1},
                                                     {0.2, 0.2},
                                                     {0.3, 0.3},
                                                     {0.4, 0.4},
                                                     {0.6, 0.3},
                                                     {0.7, 0.2},
                                                     {0.8, 0.1},
                                                     {0.9, 0.05}}};
    int steps_sym = -1, min_other = 1 << 30;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        double star = steady_market_share(pairs[i]);
        auto path = market_convergence_path(pairs[i], 1.0, 1'000);
        int steps = 0;
        while (steps < static_cast<int>(path.size()) && std::fabs(path[static_cast<std::size_t>(steps)] - star) > 1e-3)
            ++steps;
        if (i == 0)
            steps_sym = steps;
        else
            min_other = std::min(min_other, steps);
    }
    bool ok = worst <= 1e-9 && steps_sym < min_other;
    report(11, "steady market share vs 10000-step iteration (100 pairs, tol 1e-9)", ok,
           "max |closed - iterated| = " + fmt(worst) + "; symmetric pair converges in " +
               std::to_string(steps_sym) + " step vs >= " + std::to_string(min_other) + " for the rest");
}

// --------------------------------------------------------------- 12 ----

void criterion_sojourn() {
    double worst_rel = 0.0;
    bool ok = true;
    for (int k = 0; k < 20; ++k) {
        RngStream gen(1212, "acceptance-sojourn-matrix", static_cast<std::uint64_t>(k));
        std::array<std::array<double, 3>, 3> p{};
        for (auto& row : p) {
            double sum = 0.0;
            for (auto& v : row) {
                v = 0.05 + gen.uniform01();
                sum += v;
            }
            for (auto& v : row) v /= sum;
        }
        WinStateChain chain = win_state_chain_from_matrix(p);
        double closed = mean_winning_sojourn(chain, {0});
        RngStream sim(1212, "acceptance-sojourn-sim", static_cast<std::uint64_t>(k));
        double measured = simulate_sojourn(chain, {0}, 1'000'000, sim);
        double rel = std::fabs(measured - closed) / closed;
        worst_rel = std::max(worst_rel, rel);
        if (rel > 0.02) ok = false;
    }
    report(12, "winning-state sojourn closed form vs 1e6-step simulation (20 matrices, tol 2%)", ok,
           "max relative error " + fmt(worst_rel));
}

// --------------------------------------------------------------- 13 ----

void criterion_queue() {
    QueueGridConfig grid; // 10 x 10 x 5 default grid
    double worst_gap = 0.0;
    bool identity_ok = true, order_ok = true;
    for (double ra : grid.arrival) {
        for (double rs : grid.service) {
            double prev = -1e300;
            for (double m : grid.gain) {
                QueueParams q{ra, rs, grid.capacity, m, grid.unit_cost};
                double profit = leading_profit(q);
                double identity = ra * (1.0 - blocking_probability(q)) * m - grid.unit_cost * rs;
                double gap = std::fabs(profit - identity);
                worst_gap = std::max(worst_gap, gap);
                if (gap > 1e-12) identity_ok = false;
                if (!(profit > prev)) order_ok = false;
                prev = profit;
            }
        }
    }
    // discrete-event check at 1e6 arrivals on a handful of loads
    double worst_blocking = 0.0;
    bool des_ok = true;
    struct Load {
        double ra, rs;
    };
    const Load loads[] = {{2, 4}, {6, 8}, {10, 10}, {12, 8}, {18, 12}};
    int li = 0;
    for (const Load& l : loads) {
        QueueParams q{l.ra, l.rs, grid.capacity, grid.gain.front(), grid.unit_cost};
        RngStream rng(1313, "acceptance-queue", static_cast<std::uint64_t>(li++));
        double sim = simulate_blocking(q, 1'000'000, rng);
        double err = std::fabs(sim - blocking_probability(q));
        worst_blocking = std::max(worst_blocking, err);
        if (err > 0.01) des_ok = false;
    }
    report(13, "queue profit identity on the 10x10x5 grid (tol 1e-12) + DES blocking (tol 1%)",
           identity_ok && order_ok && des_ok,
           "max identity gap " + fmt(worst_gap) + ", profits ordered by gain on all 100 curves, max DES error " +
               fmt(worst_blocking) + " over 5 loads x 1e6 arrivals");
}

// --------------------------------------------------------------- 14 ----

struct BenchBook {
    std::vector<Ask> asks;
    std::vector<Bid> bids;
};

BenchBook make_book(int sellers, int buyers, RngStream& rng) {
    BenchBook book;
    book.asks.reserve(static_cast<std::size_t>(sellers));
    book.bids.reserve(static_cast<std::size_t>(buyers));
    for (int s = 0; s < sellers; ++s)
        book.asks.push_back({"s" + std::to_string(s), "slot" + std::to_string(s), "VPP1", 1.0,
                             coins(2) + static_cast<Coin>(rng.uniform_below(4'000'000))});
    for (int b = 0; b < buyers; ++b)
        book.bids.push_back({"b" + std::to_string(b), "", coins(4) + static_cast<Coin>(rng.uniform_below(6'000'000))});
    return book;
}

double median_allocate_us(const BenchBook& book, int reps) {
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(reps));
    std::size_t sink = 0;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        AllocationResult res = allocate(book.asks, book.bids);
        auto t1 = std::chrono::steady_clock::now();
        sink += res.winners.size();
        times.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
    }
    if (sink == static_cast<std::size_t>(-1)) std::printf("impossible\n");
    std::sort(times.begin(), times.end());
    return times[times.size() / 2];
}

void criterion_scaling() {
    RngStream rng(1414, "acceptance-bench", 0);
    struct Pt {
        int s, n;
        double med_us;
    };
    std::vector<Pt> pts;
    for (int n : {256, 512, 1024, 2048, 4096}) pts.push_back({64, n, 0.0});
    for (int s : {16, 32, 64, 128, 256}) pts.push_back({s, 1024, 0.0});
    for (Pt& p : pts) {
        BenchBook book = make_book(p.s, p.n, rng);
        median_allocate_us(book, 2); // warm-up
        p.med_us = median_allocate_us(book, 7);
    }
    // least squares through the origin against max(N log2 N, S*N)
    double sxx = 0.0, sxy = 0.0, sy = 0.0;
    for (const Pt& p : pts) {
        double x = std::max(p.n * std::log2(static_cast<double>(p.n)), static_cast<double>(p.s) * p.n);
        sxx += x * x;
        sxy += x * p.med_us;
        sy += p.med_us;
    }
    double c = sxy / sxx;
    double mean = sy / static_cast<double>(pts.size());
    double ss_res = 0.0, ss_tot = 0.0;
    for (const Pt& p : pts) {
        double x = std::max(p.n * std::log2(static_cast<double>(p.n)), static_cast<double>(p.s) * p.n);
        ss_res += (p.med_us - c * x) * (p.med_us - c * x);
        ss_tot += (p.med_us - mean) * (p.med_us - mean);
    }
    double r2 = 1.0 - ss_res / ss_tot;
    // doubling any dimension may cost at most 5x (super-quadratic would blow past this)
    double worst_ratio = 0.0;
    for (std::size_t i = 1; i < 5; ++i) worst_ratio = std::max(worst_ratio, pts[i].med_us / pts[i - 1].med_us);
    for (std::size_t i = 6; i < 10; ++i) worst_ratio = std::max(worst_ratio, pts[i].med_us / pts[i - 1].med_us);
    bool ok = r2 >= 0.9 && worst_ratio <= 5.0;
    report(14, "allocate runtime fits c*max(N log N, S*N) (R^2 >= 0.9, doubling ratio <= 5)", ok,
           "R^2 = " + fmt(r2) + ", worst doubling ratio " + fmt(worst_ratio) + ", largest point " +
               fmt(pts[4].med_us) + " us at S=64 N=4096");
}

} // namespace

int main() {
    criterion_fee_schedule();
    criterion_market_oracle();
    criterion_public_election();
    criterion_private_election();
    criterion_baselines();
    criterion_dp_audit();
    criterion_price_range();
    criterion_reward_conservation();
    criterion_ledger_integrity();
    criterion_race();
    criterion_market_share();
    criterion_sojourn();
    criterion_queue();
    criterion_scaling();
    if (g_failures == 0) {
        std::printf("acceptance: all 14 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
    return 1;
}
