#include "vppsim/ledger.hpp"

#include "vppsim/serialize.hpp"

#include <nlohmann/json.hpp>

#include <sstream>
#include <stdexcept>

namespace vppsim {

namespace {

constexpr std::uint8_t kEncodingVersion = 1;

int fee_pct_for(StateLabel label) {
    switch (label) {
        case StateLabel::Stable: return 10;
        case StateLabel::Warning: return 7;
        case StateLabel::Breakdown: return 3;
        case StateLabel::Shutdown: return 1;
    }
    return -1;
}

void encode_trade(ByteWriter& w, const Trade& t) {
    w.str(t.slot_id);
    w.str(t.seller_id);
    w.str(t.winner_id);
    w.str(t.vpp_id);
    w.f64(t.energy_kwh);
    w.i64(t.ask_price);
    w.i64(t.winning_bid);
    w.i64(t.final_price);
    w.i64(t.tx_fee);
    w.i64(t.mining_fee);
    w.i64(t.seller_profit);
    w.i64(t.seller_welfare);
    w.i64(t.buyer_welfare);
}

Trade decode_trade(ByteReader& r) {
    Trade t;
    t.slot_id = r.str();
    t.seller_id = r.str();
    t.winner_id = r.str();
    t.vpp_id = r.str();
    t.energy_kwh = r.f64();
    t.ask_price = r.i64();
    t.winning_bid = r.i64();
    t.final_price = r.i64();
    t.tx_fee = r.i64();
    t.mining_fee = r.i64();
    t.seller_profit = r.i64();
    t.seller_welfare = r.i64();
    t.buyer_welfare = r.i64();
    return t;
}

} // namespace

std::vector<std::uint8_t> block_content_bytes(const Block& block) {
    ByteWriter w;
    w.u8(kEncodingVersion);
    w.u64(block.height);
    w.bytes(block.prev_hash.data(), block.prev_hash.size());
    w.u64(block.round_index);
    w.u8(static_cast<std::uint8_t>(block.state));
    w.u8(static_cast<std::uint8_t>(block.fee_pct));
    w.f64(block.demand_kwh);
    w.u32(static_cast<std::uint32_t>(block.trades.size()));
    for (const auto& t : block.trades) encode_trade(w, t);
    w.u32(static_cast<std::uint32_t>(block.unsold_slots.size()));
    for (const auto& s : block.unsold_slots) w.str(s);
    w.str(block.election.mechanism);
    w.str(block.election.reward_rule);
    w.f64(block.election.eps3);
    w.str(block.election.winner);
    w.str(block.election.second);
    w.str(block.election.third);
    w.i64(block.election.reward_winner);
    w.i64(block.election.reward_second);
    w.i64(block.election.reward_third);
    w.i64(block.election.m_sum);
    w.i64(block.election.mr);
    w.u8(block.election.uniform_fallback ? 1 : 0);
    w.u32(static_cast<std::uint32_t>(block.endowments.size()));
    for (const auto& e : block.endowments) {
        w.str(e.owner);
        w.i64(e.amount);
    }
    w.str(block.proposer);
    return w.take();
}

Hash256 block_content_hash(const Block& block) { return sha256(block_content_bytes(block)); }

std::vector<std::uint8_t> encode_block(const Block& block) {
    ByteWriter w;
    auto content = block_content_bytes(block);
    w.bytes(content.data(), content.size());
    w.bytes(block.proposer_tag.data(), block.proposer_tag.size());
    w.bytes(block.block_hash.data(), block.block_hash.size());
    return w.take();
}

Block decode_block(const std::vector<std::uint8_t>& bytes) {
    ByteReader r(bytes);
    Block b;
    std::uint8_t version = r.u8();
    if (version != kEncodingVersion) throw DecodeError("unsupported block version");
    b.height = r.u64();
    r.raw(b.prev_hash.data(), b.prev_hash.size());
    b.round_index = r.u64();
    std::uint8_t state = r.u8();
    if (state > 3) throw DecodeError("bad state label");
    b.state = static_cast<StateLabel>(state);
    b.fee_pct = r.u8();
    b.demand_kwh = r.f64();
    std::uint32_t n_trades = r.count();
    b.trades.reserve(n_trades);
    for (std::uint32_t i = 0; i < n_trades; ++i) b.trades.push_back(decode_trade(r));
    std::uint32_t n_unsold = r.count();
    b.unsold_slots.reserve(n_unsold);
    for (std::uint32_t i = 0; i < n_unsold; ++i) b.unsold_slots.push_back(r.str());
    b.election.mechanism = r.str();
    b.election.reward_rule = r.str();
    b.election.eps3 = r.f64();
    b.election.winner = r.str();
    b.election.second = r.str();
    b.election.third = r.str();
    b.election.reward_winner = r.i64();
    b.election.reward_second = r.i64();
    b.election.reward_third = r.i64();
    b.election.m_sum = r.i64();
    b.election.mr = r.i64();
    b.election.uniform_fallback = r.u8() != 0;
    std::uint32_t n_endow = r.count();
    b.endowments.reserve(n_endow);
    for (std::uint32_t i = 0; i < n_endow; ++i) {
        Endowment e;
        e.owner = r.str();
        e.amount = r.i64();
        b.endowments.push_back(std::move(e));
    }
    b.proposer = r.str();
    r.raw(b.proposer_tag.data(), b.proposer_tag.size());
    r.raw(b.block_hash.data(), b.block_hash.size());
    if (!r.done()) throw DecodeError("trailing bytes after block");
    return b;
}

void KeyRegistry::register_node(const std::string& id, const Hash256& token) { tokens_[id] = token; }

bool KeyRegistry::known(const std::string& id) const { return tokens_.count(id) != 0; }

const Hash256& KeyRegistry::token(const std::string& id) const {
    auto it = tokens_.find(id);
    if (it == tokens_.end()) throw std::invalid_argument("registry: unknown node " + id);
    return it->second;
}

Hash256 KeyRegistry::derive_token(const std::string& id, std::uint64_t master_seed) {
    std::string material = "node-token:" + id + ":" + std::to_string(master_seed);
    return sha256(material);
}

Hash256 proposer_tag_for(const Hash256& token, const Hash256& content_hash) {
    std::vector<std::uint8_t> material;
    material.insert(material.end(), token.begin(), token.end());
    material.insert(material.end(), content_hash.begin(), content_hash.end());
    return sha256(material);
}

Block make_genesis(const std::vector<Endowment>& endowments) {
    Block g;
    g.height = 0;
    g.prev_hash = kZeroHash;
    g.round_index = 0;
    g.state = StateLabel::Stable;
    g.fee_pct = 10;
    g.endowments = endowments;
    for (const auto& e : g.endowments)
        if (e.amount < 0) throw std::invalid_argument("genesis: negative endowment");
    g.proposer = "genesis";
    g.proposer_tag = kZeroHash;
    g.block_hash = block_content_hash(g);
    return g;
}

Block build_block(const Block& parent, const MarketRound& round, const ElectionRecord& election,
                  const KeyRegistry& registry) {
    if (election.winner.empty()) throw std::invalid_argument("build_block: election has no winner");
    if (round.round_index <= parent.round_index)
        throw std::invalid_argument("build_block: stale parent, round must advance");
    if (!registry.known(election.winner))
        throw std::invalid_argument("build_block: proposer not registered: " + election.winner);
    Block b;
    b.height = parent.height + 1;
    b.prev_hash = parent.block_hash;
    b.round_index = round.round_index;
    b.state = round.state.label;
    b.fee_pct = round.state.fee_pct;
    b.demand_kwh = round.demand_kwh;
    b.trades = round.trades;
    b.unsold_slots = round.unsold_slots;
    b.election = election;
    b.proposer = election.winner;
    Hash256 content = block_content_hash(b);
    b.proposer_tag = proposer_tag_for(registry.token(b.proposer), content);
    b.block_hash = content;
    return b;
}

const char* reject_name(Reject r) {
    switch (r) {
        case Reject::None: return "none";
        case Reject::HashMismatch: return "hash_mismatch";
        case Reject::ParentLink: return "parent_link";
        case Reject::Height: return "height";
        case Reject::RoundOrder: return "round_order";
        case Reject::FeeSchedule: return "fee_schedule";
        case Reject::TradePriceRange: return "trade_price_range";
        case Reject::TradeFeeArithmetic: return "trade_fee_arithmetic";
        case Reject::TradeWelfare: return "trade_welfare";
        case Reject::ElectionMsum: return "election_msum";
        case Reject::RewardRule: return "reward_rule";
        case Reject::RewardConservation: return "reward_conservation";
        case Reject::WinnerDistinct: return "winner_distinct";
        case Reject::WinnerCensus: return "winner_census";
        case Reject::ProposerMismatch: return "proposer_mismatch";
        case Reject::ProposerUnknown: return "proposer_unknown";
        case Reject::ProposerTag: return "proposer_tag";
        case Reject::GenesisShape: return "genesis_shape";
        case Reject::Structure: return "structure";
    }
    return "?";
}

ValidationResult ValidationResult::fail(Reject reason, std::string detail) {
    ValidationResult r;
    r.ok = false;
    r.reason = reason;
    r.detail = std::move(detail);
    return r;
}

ValidationResult validate_genesis(const Block& genesis) {
    if (genesis.height != 0) return ValidationResult::fail(Reject::GenesisShape, "genesis height must be 0");
    if (genesis.prev_hash != kZeroHash)
        return ValidationResult::fail(Reject::GenesisShape, "genesis prev hash must be zero");
    if (!genesis.trades.empty() || !genesis.election.winner.empty() || genesis.election.m_sum != 0)
        return ValidationResult::fail(Reject::GenesisShape, "genesis carries trades or an election");
    for (const auto& e : genesis.endowments)
        if (e.amount < 0) return ValidationResult::fail(Reject::GenesisShape, "negative endowment");
    if (block_content_hash(genesis) != genesis.block_hash)
        return ValidationResult::fail(Reject::HashMismatch, "genesis hash does not match content");
    return ValidationResult::pass();
}

ValidationResult validate_block(const Block& block, const Block& parent, const KeyRegistry& registry) {
    Hash256 content = block_content_hash(block);
    if (content != block.block_hash)
        return ValidationResult::fail(Reject::HashMismatch, "stored hash does not match content");
    if (block.prev_hash != parent.block_hash)
        return ValidationResult::fail(Reject::ParentLink, "prev hash does not match parent");
    if (block.height != parent.height + 1)
        return ValidationResult::fail(Reject::Height, "height must increment by one");
    if (block.round_index <= parent.round_index)
        return ValidationResult::fail(Reject::RoundOrder, "round index must advance");
    if (block.fee_pct != fee_pct_for(block.state))
        return ValidationResult::fail(Reject::FeeSchedule, "fee percent does not match state");
    if (!block.endowments.empty())
        return ValidationResult::fail(Reject::Structure, "endowments outside genesis");

    Coin mining_sum = 0;
    for (const auto& t : block.trades) {
        if (t.ask_price <= 0 || t.winning_bid < t.ask_price || t.final_price < t.ask_price ||
            t.final_price > t.winning_bid || !(t.energy_kwh > 0.0))
            return ValidationResult::fail(Reject::TradePriceRange, "slot " + t.slot_id);
        Coin tx = t.final_price * block.fee_pct / 100;
        if (t.tx_fee != tx || t.mining_fee != tx)
            return ValidationResult::fail(Reject::TradeFeeArithmetic, "slot " + t.slot_id);
        if (t.seller_profit != t.final_price - t.tx_fee - t.mining_fee)
            return ValidationResult::fail(Reject::TradeFeeArithmetic, "slot " + t.slot_id + " profit");
        if (t.seller_welfare != t.seller_profit - t.ask_price ||
            t.buyer_welfare != t.winning_bid - t.final_price)
            return ValidationResult::fail(Reject::TradeWelfare, "slot " + t.slot_id);
        mining_sum += t.mining_fee;
    }

    const ElectionRecord& e = block.election;
    if (e.m_sum != mining_sum)
        return ValidationResult::fail(Reject::ElectionMsum, "election m_sum != sum of mining fees");
    if (e.mr < 0 || e.reward_winner < 0 || e.reward_second < 0 || e.reward_third < 0)
        return ValidationResult::fail(Reject::RewardRule, "negative reward");
    if (e.reward_rule == "public") {
        if (e.reward_second != e.m_sum * 2 / 10 || e.reward_third != e.m_sum * 1 / 10 ||
            e.reward_winner != e.mr + e.m_sum - e.reward_second - e.reward_third)
            return ValidationResult::fail(Reject::RewardRule, "public split mismatch");
    } else if (e.reward_rule == "private") {
        Coin random_share = e.reward_winner - e.mr;
        if (random_share < 0 || random_share > e.m_sum)
            return ValidationResult::fail(Reject::RewardRule, "private winner share out of range");
        Coin rest = e.m_sum - random_share;
        if (e.reward_second != rest * 7 / 10 || e.reward_third != rest - e.reward_second)
            return ValidationResult::fail(Reject::RewardRule, "private split mismatch");
    } else if (e.reward_rule == "private_prose") {
        Coin random_share = e.reward_winner - e.mr;
        if (random_share < 0 || random_share > e.m_sum)
            return ValidationResult::fail(Reject::RewardRule, "private winner share out of range");
        if (e.reward_second != e.m_sum * 2 / 10 || e.reward_third != e.m_sum * 1 / 10)
            return ValidationResult::fail(Reject::RewardRule, "prose split mismatch");
    } else {
        return ValidationResult::fail(Reject::RewardRule, "unknown reward rule: " + e.reward_rule);
    }
    // the prose variant knowingly breaks conservation; everything else must hold it
    if (e.reward_rule != "private_prose" &&
        e.reward_winner + e.reward_second + e.reward_third != e.mr + e.m_sum)
        return ValidationResult::fail(Reject::RewardConservation, "rewards do not add up to mr + m_sum");

    if (e.winner.empty()) return ValidationResult::fail(Reject::RewardRule, "election without winner");
    if ((!e.second.empty() && (e.second == e.winner || e.second == e.third)) ||
        (!e.third.empty() && e.third == e.winner))
        return ValidationResult::fail(Reject::WinnerDistinct, "podium entries repeat");
    if (e.mechanism == "poem" && !e.uniform_fallback && !block.trades.empty()) {
        double winner_energy = 0.0;
        for (const auto& t : block.trades)
            if (t.vpp_id == e.winner) winner_energy += t.energy_kwh;
        if (!(winner_energy > 0.0))
            return ValidationResult::fail(Reject::WinnerCensus, "winner traded no energy");
    }

    if (block.proposer != e.winner)
        return ValidationResult::fail(Reject::ProposerMismatch, "proposer is not the election winner");
    if (!registry.known(block.proposer))
        return ValidationResult::fail(Reject::ProposerUnknown, block.proposer);
    if (proposer_tag_for(registry.token(block.proposer), content) != block.proposer_tag)
        return ValidationResult::fail(Reject::ProposerTag, "proposer tag does not verify");
    return ValidationResult::pass();
}

ValidationResult validate_chain(const std::vector<Block>& chain, const KeyRegistry& registry) {
    if (chain.empty()) return ValidationResult::fail(Reject::Structure, "empty chain");
    ValidationResult g = validate_genesis(chain.front());
    if (!g.ok) return g;
    for (std::size_t i = 1; i < chain.size(); ++i) {
        ValidationResult r = validate_block(chain[i], chain[i - 1], registry);
        if (!r.ok) {
            r.detail = "block " + std::to_string(i) + ": " + r.detail;
            return r;
        }
    }
    return ValidationResult::pass();
}

Coin WalletState::balance(const std::string& id) const {
    auto it = balances.find(id);
    return it == balances.end() ? 0 : it->second;
}

Coin WalletState::balance_sum() const {
    Coin sum = 0;
    for (const auto& [id, amount] : balances) sum += amount;
    return sum;
}

ValidationResult apply_block(const Block& block, WalletState& wallets) {
    WalletState staged = wallets;
    if (block.height == 0) {
        for (const auto& e : block.endowments) {
            staged.balances[e.owner] += e.amount;
            staged.endowed += e.amount;
        }
    } else {
        for (const auto& t : block.trades) {
            Coin& buyer = staged.balances[t.winner_id];
            if (buyer < t.final_price)
                return ValidationResult::fail(Reject::Structure,
                                              "insufficient funds: " + t.winner_id + " owes " +
                                                  coin_format(t.final_price) + " has " + coin_format(buyer));
            buyer -= t.final_price;
            staged.balances[t.seller_id] += t.seller_profit;
            staged.balances[t.vpp_id] += t.tx_fee;
            staged.pool += t.mining_fee;
        }
        const ElectionRecord& e = block.election;
        // the winner's base reward is minted; everything else comes out of the pool
        Coin from_pool = e.reward_winner - e.mr;
        staged.balances[e.winner] += e.reward_winner;
        staged.minted += e.mr;
        if (!e.second.empty()) {
            staged.balances[e.second] += e.reward_second;
            from_pool += e.reward_second;
        }
        if (!e.third.empty()) {
            staged.balances[e.third] += e.reward_third;
            from_pool += e.reward_third;
        }
        if (staged.pool < from_pool)
            return ValidationResult::fail(Reject::Structure, "mining pool overdrawn");
        staged.pool -= from_pool;
    }
    if (!staged.conserved())
        return ValidationResult::fail(Reject::Structure, "conservation violated after apply");
    wallets = std::move(staged);
    return ValidationResult::pass();
}

bool coin_policy_allows(const CoinTransfer& transfer) {
    if (transfer.amount < 0) return false;
    switch (transfer.purpose) {
        case TransferPurpose::EnergySettlement:
        case TransferPurpose::Fee:
        case TransferPurpose::Reward:
        case TransferPurpose::FiatRamp:
            return true;
        case TransferPurpose::PeerTransfer:
            return false;
    }
    return false;
}

namespace {

nlohmann::ordered_json trade_to_json(const Trade& t) {
    nlohmann::ordered_json j;
    j["slot_id"] = t.slot_id;
    j["seller_id"] = t.seller_id;
    j["winner_id"] = t.winner_id;
    j["vpp_id"] = t.vpp_id;
    j["energy_kwh"] = t.energy_kwh;
    j["ask_price"] = t.ask_price;
    j["winning_bid"] = t.winning_bid;
    j["final_price"] = t.final_price;
    j["tx_fee"] = t.tx_fee;
    j["mining_fee"] = t.mining_fee;
    j["seller_profit"] = t.seller_profit;
    j["seller_welfare"] = t.seller_welfare;
    j["buyer_welfare"] = t.buyer_welfare;
    return j;
}

Trade trade_from_json(const nlohmann::json& j) {
    Trade t;
    t.slot_id = j.at("slot_id").get<std::string>();
    t.seller_id = j.at("seller_id").get<std::string>();
    t.winner_id = j.at("winner_id").get<std::string>();
    t.vpp_id = j.at("vpp_id").get<std::string>();
    t.energy_kwh = j.at("energy_kwh").get<double>();
    t.ask_price = j.at("ask_price").get<Coin>();
    t.winning_bid = j.at("winning_bid").get<Coin>();
    t.final_price = j.at("final_price").get<Coin>();
    t.tx_fee = j.at("tx_fee").get<Coin>();
    t.mining_fee = j.at("mining_fee").get<Coin>();
    t.seller_profit = j.at("seller_profit").get<Coin>();
    t.seller_welfare = j.at("seller_welfare").get<Coin>();
    t.buyer_welfare = j.at("buyer_welfare").get<Coin>();
    return t;
}

} // namespace

std::string chain_to_jsonl(const std::vector<Block>& chain) {
    std::ostringstream out;
    for (const auto& b : chain) {
        nlohmann::ordered_json j;
        j["height"] = b.height;
        j["prev_hash"] = hash_to_hex(b.prev_hash);
        j["round_index"] = b.round_index;
        j["state"] = state_name(b.state);
        j["fee_pct"] = b.fee_pct;
        j["demand_kwh"] = b.demand_kwh;
        j["trades"] = nlohmann::ordered_json::array();
        for (const auto& t : b.trades) j["trades"].push_back(trade_to_json(t));
        j["unsold_slots"] = b.unsold_slots;
        nlohmann::ordered_json e;
        e["mechanism"] = b.election.mechanism;
        e["reward_rule"] = b.election.reward_rule;
        e["eps3"] = b.election.eps3;
        e["winner"] = b.election.winner;
        e["second"] = b.election.second;
        e["third"] = b.election.third;
        e["reward_winner"] = b.election.reward_winner;
        e["reward_second"] = b.election.reward_second;
        e["reward_third"] = b.election.reward_third;
        e["m_sum"] = b.election.m_sum;
        e["mr"] = b.election.mr;
        e["uniform_fallback"] = b.election.uniform_fallback;
        j["election"] = e;
        j["endowments"] = nlohmann::ordered_json::array();
        for (const auto& en : b.endowments) j["endowments"].push_back({{"owner", en.owner}, {"amount", en.amount}});
        j["proposer"] = b.proposer;
        j["proposer_tag"] = hash_to_hex(b.proposer_tag);
        j["block_hash"] = hash_to_hex(b.block_hash);
        out << j.dump() << "\n";
    }
    return out.str();
}

std::vector<Block> chain_from_jsonl(const std::string& text) {
    std::vector<Block> chain;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line);
        Block b;
        b.height = j.at("height").get<std::uint64_t>();
        b.prev_hash = hash_from_hex(j.at("prev_hash").get<std::string>());
        b.round_index = j.at("round_index").get<std::uint64_t>();
        b.state = state_from_name(j.at("state").get<std::string>());
        b.fee_pct = j.at("fee_pct").get<int>();
        b.demand_kwh = j.at("demand_kwh").get<double>();
        for (const auto& tj : j.at("trades")) b.trades.push_back(trade_from_json(tj));
        b.unsold_slots = j.at("unsold_slots").get<std::vector<std::string>>();
        const auto& e = j.at("election");
        b.election.mechanism = e.at("mechanism").get<std::string>();
        b.election.reward_rule = e.at("reward_rule").get<std::string>();
        b.election.eps3 = e.at("eps3").get<double>();
        b.election.winner = e.at("winner").get<std::string>();
        b.election.second = e.at("second").get<std::string>();
        b.election.third = e.at("third").get<std::string>();
        b.election.reward_winner = e.at("reward_winner").get<Coin>();
        b.election.reward_second = e.at("reward_second").get<Coin>();
        b.election.reward_third = e.at("reward_third").get<Coin>();
        b.election.m_sum = e.at("m_sum").get<Coin>();
        b.election.mr = e.at("mr").get<Coin>();
        b.election.uniform_fallback = e.at("uniform_fallback").get<bool>();
        for (const auto& ej : j.at("endowments")) {
            Endowment en;
            en.owner = ej.at("owner").get<std::string>();
            en.amount = ej.at("amount").get<Coin>();
            b.endowments.push_back(std::move(en));
        }
        b.proposer = j.at("proposer").get<std::string>();
        b.proposer_tag = hash_from_hex(j.at("proposer_tag").get<std::string>());
        b.block_hash = hash_from_hex(j.at("block_hash").get<std::string>());
        chain.push_back(std::move(b));
    }
    return chain;
}

} // namespace vppsim
