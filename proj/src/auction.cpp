#include "vppsim/auction.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace vppsim {

AllocationResult allocate(const std::vector<Ask>& asks, const std::vector<Bid>& bids) {
    std::set<std::string> slot_ids;
    for (const auto& a : asks) {
        if (!slot_ids.insert(a.slot_id).second)
            throw std::invalid_argument("allocate: duplicate slot '" + a.slot_id + "'");
        if (a.ask_price <= 0) throw std::invalid_argument("allocate: ask price must be > 0");
        if (!(a.energy_kwh > 0.0)) throw std::invalid_argument("allocate: slot energy must be > 0");
    }
    for (const auto& b : bids)
        if (b.bid_price <= 0) throw std::invalid_argument("allocate: bid price must be > 0");

    std::vector<const Ask*> order;
    order.reserve(asks.size());
    for (const auto& a : asks) order.push_back(&a);
    std::sort(order.begin(), order.end(), [](const Ask* a, const Ask* b) {
        if (a->ask_price != b->ask_price) return a->ask_price < b->ask_price;
        return a->slot_id < b->slot_id;
    });

    std::vector<bool> consumed(bids.size(), false);
    AllocationResult result;
    for (const Ask* ask : order) {
        // scan every open bid for the best match, the way the selection
        // rule is written: highest price, ties to the lowest buyer id
        std::size_t best = bids.size();
        for (std::size_t i = 0; i < bids.size(); ++i) {
            if (consumed[i] || bids[i].bid_price < ask->ask_price) continue;
            if (best == bids.size() || bids[i].bid_price > bids[best].bid_price ||
                (bids[i].bid_price == bids[best].bid_price && bids[i].buyer_id < bids[best].buyer_id))
                best = i;
        }
        if (best == bids.size()) {
            result.unsold_slots.push_back(ask->slot_id);
            continue;
        }
        consumed[best] = true;
        result.winners.push_back({ask->slot_id, ask->seller_id, bids[best].buyer_id, ask->vpp_id, ask->energy_kwh,
                                  ask->ask_price, bids[best].bid_price});
    }
    return result;
}

Coin price_poem(const Allocation& allocation) { return allocation.winning_bid; }

Trade settle(const Allocation& allocation, Coin final_price, const SystemState& state) {
    if (final_price < allocation.ask_price || final_price > allocation.winning_bid)
        throw std::invalid_argument("settle: final price outside [ask, bid]");
    Trade t;
    t.slot_id = allocation.slot_id;
    t.seller_id = allocation.seller_id;
    t.winner_id = allocation.winner_id;
    t.vpp_id = allocation.vpp_id;
    t.energy_kwh = allocation.energy_kwh;
    t.ask_price = allocation.ask_price;
    t.winning_bid = allocation.winning_bid;
    t.final_price = final_price;
    t.tx_fee = final_price * state.fee_pct / 100;
    t.mining_fee = final_price * state.fee_pct / 100;
    t.seller_profit = final_price - t.tx_fee - t.mining_fee;
    t.seller_welfare = t.seller_profit - allocation.ask_price;
    t.buyer_welfare = allocation.winning_bid - final_price;
    return t;
}

std::map<std::string, double> MarketRound::energy_by_vpp() const {
    std::map<std::string, double> energy;
    for (const auto& t : trades) energy[t.vpp_id] += t.energy_kwh;
    return energy;
}

Coin MarketRound::total_tx_fees() const {
    Coin sum = 0;
    for (const auto& t : trades) sum += t.tx_fee;
    return sum;
}

Coin MarketRound::total_mining_fees() const {
    Coin sum = 0;
    for (const auto& t : trades) sum += t.mining_fee;
    return sum;
}

std::string round_to_jsonl(const MarketRound& round) {
    std::ostringstream out;
    for (const auto& t : round.trades) {
        nlohmann::ordered_json j;
        j["round"] = round.round_index;
        j["state"] = state_name(round.state.label);
        j["slot_id"] = t.slot_id;
        j["seller_id"] = t.seller_id;
        j["winner_id"] = t.winner_id;
        j["vpp_id"] = t.vpp_id;
        j["energy_kwh"] = t.energy_kwh;
        j["ask_price"] = coin_format(t.ask_price);
        j["winning_bid"] = coin_format(t.winning_bid);
        j["final_price"] = coin_format(t.final_price);
        j["tx_fee"] = coin_format(t.tx_fee);
        j["mining_fee"] = coin_format(t.mining_fee);
        j["seller_profit"] = coin_format(t.seller_profit);
        j["seller_welfare"] = coin_format(t.seller_welfare);
        j["buyer_welfare"] = coin_format(t.buyer_welfare);
        out << j.dump() << "\n";
    }
    for (const auto& slot : round.unsold_slots) {
        nlohmann::ordered_json j;
        j["round"] = round.round_index;
        j["unsold"] = slot;
        out << j.dump() << "\n";
    }
    return out.str();
}

} // namespace vppsim
