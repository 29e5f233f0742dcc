#include "vppsim/report.hpp"

#include "vppsim/auction.hpp"
#include "vppsim/election.hpp"
#include "vppsim/privacy.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace vppsim {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace

double race_enumeration(int a, int b, bool drop_last) {
    if (a < 0 || b < 0 || a + b > 24) throw std::invalid_argument("race_enumeration: instance too large");
    if (drop_last) {
        if (a < 1) throw std::invalid_argument("race_enumeration: no leader step to drop");
        --a;
    }
    if (a == 0 && b == 0) return 1.0;
    // w[i][j]: orderings of i leader and j challenger steps where the
    // leader is strictly ahead after every step taken
    std::vector<std::vector<std::uint64_t>> w(a + 1, std::vector<std::uint64_t>(b + 1, 0));
    w[0][0] = 1;
    for (int i = 0; i <= a; ++i)
        for (int j = 0; j <= b; ++j) {
            if (i == 0 && j == 0) continue;
            if (i <= j) continue; // lead would be <= 0 here
            std::uint64_t paths = 0;
            if (i > 0) paths += w[i - 1][j];
            if (j > 0) paths += w[i][j - 1];
            w[i][j] = paths;
        }
    long double total = 1.0L; // C(a+b, b)
    for (int i = 1; i <= b; ++i) total = total * (a + i) / i;
    return static_cast<double>(w[a][b] / total);
}

double simulate_sojourn(const WinStateChain& chain, const std::vector<int>& t1_states, std::uint64_t steps,
                        RngStream& rng) {
    bool in_set[3] = {false, false, false};
    for (int s : t1_states) in_set[s] = true;
    std::vector<double> rows[3];
    for (int i = 0; i < 3; ++i)
        rows[i] = {chain.p[static_cast<std::size_t>(i)][0], chain.p[static_cast<std::size_t>(i)][1],
                   chain.p[static_cast<std::size_t>(i)][2]};
    std::size_t state = 0;
    std::uint64_t runs = 0, run_steps = 0, current = 0;
    bool inside = in_set[state];
    if (inside) current = 1;
    for (std::uint64_t t = 1; t < steps; ++t) {
        state = rng.categorical(rows[state]);
        if (in_set[state]) {
            ++current;
            inside = true;
        } else if (inside) {
            ++runs;
            run_steps += current;
            current = 0;
            inside = false;
        }
    }
    // an unfinished trailing run is dropped; negligible over long horizons
    if (runs == 0) return std::numeric_limits<double>::quiet_NaN();
    return static_cast<double>(run_steps) / static_cast<double>(runs);
}

double simulate_blocking(const QueueParams& q, std::uint64_t arrivals, RngStream& rng) {
    std::uint64_t blocked = 0;
    int in_system = 0;
    double now = 0.0, next_departure = std::numeric_limits<double>::infinity();
    for (std::uint64_t n = 0; n < arrivals; ++n) {
        now += rng.exponential(q.arrival_rate);
        while (next_departure <= now) {
            // drain departures that happened before this arrival
            --in_system;
            next_departure = in_system > 0 ? next_departure + rng.exponential(q.service_rate)
                                           : std::numeric_limits<double>::infinity();
        }
        if (in_system >= q.capacity) {
            ++blocked;
            continue;
        }
        ++in_system;
        if (in_system == 1) next_departure = now + rng.exponential(q.service_rate);
    }
    return static_cast<double>(blocked) / static_cast<double>(arrivals);
}

SweepReport analytics_sweeps(const QueueGridConfig& queue, double gain_from_cut, std::uint64_t seed) {
    SweepReport rep;
    auto fail = [&](const std::string& why) {
        rep.pass = false;
        rep.failures.push_back(why);
    };

    { // mining race: closed form against exhaustive unit-step enumeration
        std::ostringstream csv;
        csv << "sx,sy,e,closed_form,enumeration,abs_err\n";
        for (int total = 2; total <= 12; ++total) {
            for (int b = 0; b <= total; ++b) {
                int a = total - b;
                for (int e = 0; e <= 1; ++e) {
                    if (a < b + e || a + b <= e) continue;
                    double closed = race_probability({static_cast<double>(a), static_cast<double>(b),
                                                      static_cast<double>(e)});
                    double oracle = race_enumeration(a, b, e == 1);
                    double err = std::fabs(closed - oracle);
                    csv << a << "," << b << "," << e << "," << fmt(closed) << "," << fmt(oracle) << ","
                        << fmt(err) << "\n";
                    if (err > 1e-9) fail("race closed form vs enumeration at (" + std::to_string(a) + "," +
                                         std::to_string(b) + "," + std::to_string(e) + ")");
                }
            }
        }
        rep.race_csv = csv.str();
    }

    { // market share convergence: closed form, power iteration, step counts
        const std::array<MarketTransitions, 9> pairs = {{{0.5, 0.5},
                                                         {0.1, 0.1},
                                                         {0.2, 0.2},
                                                         {0.3, 0.3},
                                                         {0.4, 0.4},
                                                         {0.6, 0.3},
                                                         {0.7, 0.2},
                                                         {0.8, 0.1},
                                                         {0.9, 0.05}}};
        std::ostringstream csv;
        csv << "p_xy,p_yx,steady_closed,steady_iterated,abs_err,steps_to_1e3\n";
        int steps_sym = -1, min_other = 1 << 30;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const auto& m = pairs[i];
            double closed = steady_market_share(m);
            auto path = market_convergence_path(m, 1.0, 10'000);
            double iterated = path.back();
            double err = std::fabs(closed - iterated);
            int steps = 0;
            while (steps < static_cast<int>(path.size()) && std::fabs(path[steps] - closed) > 1e-3) ++steps;
            csv << m.p_xy << "," << m.p_yx << "," << fmt(closed) << "," << fmt(iterated) << "," << fmt(err)
                << "," << steps << "\n";
            if (err > 1e-9) fail("convergence steady state mismatch");
            if (i == 0)
                steps_sym = steps;
            else
                min_other = std::min(min_other, steps);
        }
        if (!(steps_sym <= min_other)) fail("symmetric pair did not converge fastest");
        rep.convergence_csv = csv.str();
    }

    { // winning-band sojourn: closed form vs simulated mean run length
        std::ostringstream csv;
        csv << "matrix,wt_closed,wt_simulated,rel_err\n";
        for (int k = 0; k < 5; ++k) {
            RngStream gen(seed, "sweep-sojourn-matrix", static_cast<std::uint64_t>(k));
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
            RngStream sim(seed, "sweep-sojourn-sim", static_cast<std::uint64_t>(k));
            double measured = simulate_sojourn(chain, {0}, 1'000'000, sim);
            double rel = std::fabs(measured - closed) / closed;
            csv << k << "," << fmt(closed) << "," << fmt(measured) << "," << fmt(rel) << "\n";
            if (rel > 0.02) fail("sojourn sim off closed form on matrix " + std::to_string(k));
        }
        rep.sojourn_csv = csv.str();
    }

    { // queue model: profit identity on the grid, blocking vs simulation
        std::ostringstream csv;
        csv << "arrival,service,gain,capacity,profit,identity_gap,blocking,blocking_sim,blocking_abs_err\n";
        std::uint64_t sim_budget = 5; // full DES only on a few rows, grid identity on all
        std::uint64_t sims_done = 0;
        std::vector<double> gains = queue.gain;
        if (gain_from_cut > 0.0) gains.push_back(gain_from_cut);
        for (double ra : queue.arrival) {
            for (double rs : queue.service) {
                for (double m : gains) {
                    QueueParams q{ra, rs, queue.capacity, m, queue.unit_cost};
                    double profit = leading_profit(q);
                    double blocking = blocking_probability(q);
                    double identity = ra * (1.0 - blocking) * m - queue.unit_cost * rs;
                    double gap = std::fabs(profit - identity);
                    if (gap > 1e-12) fail("profit identity gap on queue grid");
                    double sim = std::numeric_limits<double>::quiet_NaN(), abs_err = sim;
                    bool simulate = sims_done < sim_budget && m == gains.front();
                    if (simulate && ra / rs > 0.4 && ra / rs < 2.0) {
                        RngStream rng(seed, "sweep-queue", sims_done);
                        sim = simulate_blocking(q, 1'000'000, rng);
                        abs_err = std::fabs(sim - blocking);
                        if (abs_err > 0.01) fail("blocking DES off closed form");
                        ++sims_done;
                    }
                    csv << ra << "," << rs << "," << m << "," << q.capacity << "," << fmt(profit) << ","
                        << fmt(gap) << ",";
                    csv << fmt(blocking) << "," << (std::isnan(sim) ? "" : fmt(sim)) << ","
                        << (std::isnan(abs_err) ? "" : fmt(abs_err)) << "\n";
                }
            }
        }
        // profit strictly increases with the per-transaction gain
        QueueParams base{queue.arrival.front(), queue.service.front(), queue.capacity, 0.0, queue.unit_cost};
        double prev = -std::numeric_limits<double>::infinity();
        std::vector<double> sorted_gains = queue.gain;
        std::sort(sorted_gains.begin(), sorted_gains.end());
        for (double m : sorted_gains) {
            QueueParams q = base;
            q.gain = m;
            double p = leading_profit(q);
            if (!(p > prev)) fail("profit not ordered by gain");
            prev = p;
        }
        rep.queue_csv = csv.str();
    }

    return rep;
}

WelfareReport welfare_sweep(const MarketConfig& market, const PrivacyConfig& privacy,
                            const std::vector<int>& buyer_grid, int reps, std::uint64_t seed) {
    WelfareReport rep;
    const SystemState state{StateLabel::Stable, 10};
    const int sellers = 10;
    PrivacyBudget budget{privacy.eps1, privacy.eps2, privacy.eps3_grid.front()};
    for (const std::string mech : {"poem", "ppoem"}) {
        double prev_sw = -std::numeric_limits<double>::infinity();
        for (int buyers : buyer_grid) {
            double sw_s = 0.0, sw_b = 0.0;
            for (int rep_i = 0; rep_i < reps; ++rep_i) {
                std::uint64_t tag = (static_cast<std::uint64_t>(buyers) << 32) ^ static_cast<std::uint64_t>(rep_i);
                RngStream rng(seed, "welfare:" + mech, tag);
                std::vector<Ask> asks;
                std::vector<Bid> bids;
                for (int s = 0; s < sellers; ++s)
                    asks.push_back({"seller" + std::to_string(s), "slot" + std::to_string(s), "VPP1",
                                    rng.uniform_range(0.5, 3.0), rng.uniform_int(market.ask_lo, market.ask_hi)});
                for (int b = 0; b < buyers; ++b)
                    bids.push_back({"buyer" + std::to_string(b), "", rng.uniform_int(market.bid_lo, market.bid_hi)});
                auto allocation = allocate(asks, bids);
                Coin round_sw_s = 0, round_sw_b = 0;
                for (const auto& a : allocation.winners) {
                    Coin price = mech == "poem" ? price_poem(a)
                                                : private_price(a.winning_bid, a.ask_price, budget,
                                                                privacy.string_length, rng)
                                                      .price;
                    Trade t = settle(a, price, state);
                    round_sw_s += t.seller_welfare;
                    round_sw_b += t.buyer_welfare;
                }
                sw_s += coin_to_double(round_sw_s);
                sw_b += coin_to_double(round_sw_b);
            }
            WelfareRow row;
            row.mechanism = mech;
            row.buyers = buyers;
            row.mean_seller_welfare = sw_s / reps;
            row.mean_buyer_welfare = sw_b / reps;
            rep.rows.push_back(row);
            if (row.mean_seller_welfare + 1e-9 < prev_sw) rep.seller_welfare_monotone = false;
            prev_sw = row.mean_seller_welfare;
        }
    }
    std::ostringstream csv;
    csv << "mechanism,buyers,mean_seller_welfare,mean_buyer_welfare\n";
    for (const auto& r : rep.rows)
        csv << r.mechanism << "," << r.buyers << "," << fmt(r.mean_seller_welfare) << ","
            << fmt(r.mean_buyer_welfare) << "\n";
    rep.csv = csv.str();
    return rep;
}

DpAuditOutput dp_audit_report(const PrivacyConfig& privacy) {
    DpAuditOutput out;
    nlohmann::ordered_json j;
    j["kind"] = "exact_distribution_ratio_audit";
    j["slack"] = 1e-9;

    // miner selection: 5-VPP censuses on a coarse energy grid; neighbors
    // move one VPP's energy by at most dq2
    const double dq2 = privacy.dq2_max_trade_kwh;
    const std::array<double, 3> levels = {0.0, 10.0, 40.0};
    std::vector<std::pair<EnergyCensus, EnergyCensus>> pairs;
    std::vector<std::string> ids = {"VPP1", "VPP2", "VPP3", "VPP4", "VPP5"};
    std::array<std::size_t, 5> idx{};
    for (idx[0] = 0; idx[0] < 3; ++idx[0])
        for (idx[1] = 0; idx[1] < 3; ++idx[1])
            for (idx[2] = 0; idx[2] < 3; ++idx[2])
                for (idx[3] = 0; idx[3] < 3; ++idx[3])
                    for (idx[4] = 0; idx[4] < 3; ++idx[4]) {
                        EnergyCensus base;
                        base.vpp_ids = ids;
                        for (std::size_t v = 0; v < 5; ++v) base.energy_kwh.push_back(levels[idx[v]]);
                        for (std::size_t v = 0; v < 5; ++v) {
                            for (double delta : {dq2, -dq2}) {
                                EnergyCensus moved = base;
                                moved.energy_kwh[v] = std::max(0.0, moved.energy_kwh[v] + delta);
                                pairs.emplace_back(base, moved);
                            }
                        }
                    }
    j["miner_selection"] = nlohmann::ordered_json::array();
    for (double eps3 : privacy.eps3_grid) {
        auto mech = [&](const EnergyCensus& c) { return ppoem_distribution(c, eps3, dq2); };
        DpAuditReport audit = dp_ratio_audit<EnergyCensus>(mech, pairs);
        bool pass = audit.within(eps3);
        nlohmann::ordered_json row;
        row["eps3"] = eps3;
        row["pairs"] = audit.pairs_checked;
        row["max_abs_log_ratio"] = audit.max_abs_log_ratio;
        row["bound"] = eps3;
        row["pass"] = pass;
        j["miner_selection"].push_back(row);
        if (!pass) out.pass = false;
    }

    // price selection: fixed candidate set, neighbors shift the midpoint
    // by at most the declared sensitivity dif/2
    {
        const double ask = 4.0, bid = 10.0, dif = bid - ask, sens = dif / 2.0;
        std::vector<double> candidates;
        for (int i = 1; i <= 12; ++i) candidates.push_back(ask + dif * i / 12.0);
        auto mech = [&](double mid) {
            std::vector<double> scores;
            scores.reserve(candidates.size());
            for (double c : candidates) scores.push_back(-std::fabs(c - mid));
            return exponential_mechanism_distribution(scores, privacy.eps2, sens);
        };
        std::vector<std::pair<double, double>> mid_pairs;
        for (double base : {5.0, 6.0, 7.0, 8.0, 9.0})
            for (double shift : {sens, sens / 2, -sens / 2, -sens}) mid_pairs.emplace_back(base, base + shift);
        DpAuditReport audit = dp_ratio_audit<double>(mech, mid_pairs);
        bool pass = audit.within(privacy.eps2);
        j["price_selection"] = {{"eps2", privacy.eps2},
                                {"pairs", audit.pairs_checked},
                                {"max_abs_log_ratio", audit.max_abs_log_ratio},
                                {"bound", privacy.eps2},
                                {"pass", pass}};
        if (!pass) out.pass = false;
    }

    j["pass"] = out.pass;
    out.json = j.dump(2) + "\n";
    return out;
}

} // namespace vppsim
