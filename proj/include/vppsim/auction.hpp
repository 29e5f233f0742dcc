#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vppsim/coin.hpp"
#include "vppsim/system_state.hpp"

namespace vppsim {

struct Ask {
    std::string seller_id;
    std::string slot_id; // unique per market
    std::string vpp_id;  // brokering VPP, collects the transaction fee
    double energy_kwh = 0.0;
    Coin ask_price = 0; // reserve, micro-coins per slot
};

struct Bid {
    std::string buyer_id;
    std::string slot_id; // informational; bids compete for any open slot
    Coin bid_price = 0;
};

struct Allocation {
    std::string slot_id;
    std::string seller_id;
    std::string winner_id;
    std::string vpp_id;
    double energy_kwh = 0.0;
    Coin ask_price = 0;
    Coin winning_bid = 0;
};

struct AllocationResult {
    std::vector<Allocation> winners;
    std::vector<std::string> unsold_slots;
};

// Sealed-bid clearing: sellers are processed in ascending ask order
// (ties by slot_id); each takes the highest still-unconsumed bid that
// meets its ask, price ties resolved toward the lowest buyer_id. A
// winning bid is consumed; slots no bid qualifies for stay unsold.
// Throws on duplicate slot ids or non-positive prices/energy.
AllocationResult allocate(const std::vector<Ask>& asks, const std::vector<Bid>& bids);

// The public price rule: winner pays their own bid.
Coin price_poem(const Allocation& allocation);

struct Trade {
    std::string slot_id;
    std::string seller_id;
    std::string winner_id; // the buyer
    std::string vpp_id;
    double energy_kwh = 0.0;
    Coin ask_price = 0;
    Coin winning_bid = 0;
    Coin final_price = 0;    // F_p: what the buyer pays
    Coin tx_fee = 0;         // to the brokering VPP
    Coin mining_fee = 0;     // to the mining pool
    Coin seller_profit = 0;  // final_price - tx_fee - mining_fee, credited to seller
    Coin seller_welfare = 0; // seller_profit - ask
    Coin buyer_welfare = 0;  // bid - final_price (zero under pay-your-bid)
};

// Applies the state fee schedule: both fees are final_price * pct / 100
// in integer micro-coins (floor). seller_profit is the exact remainder,
// so final_price == seller_profit + tx_fee + mining_fee always.
// Throws unless ask <= final_price <= winning bid.
Trade settle(const Allocation& allocation, Coin final_price, const SystemState& state);

struct MarketRound {
    std::uint64_t round_index = 0;
    std::int64_t hour_start = 0;
    SystemState state;
    double demand_kwh = 0.0; // G_E used for the state decision
    std::vector<Trade> trades;
    std::vector<std::string> unsold_slots;

    // traded energy per VPP, the election census input (S_k)
    std::map<std::string, double> energy_by_vpp() const;
    Coin total_tx_fees() const;
    Coin total_mining_fees() const; // M_sum for this round's election
};

// One JSON object per trade, then one {"unsold": ...} line per open slot.
std::string round_to_jsonl(const MarketRound& round);

} // namespace vppsim
