#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vppsim/auction.hpp"
#include "vppsim/coin.hpp"
#include "vppsim/sha256.hpp"

namespace vppsim {

// Ledger-facing record of one election. Ids, not indices, so a block is
// self-describing. Empty second/third mean fewer than three VPPs existed.
struct ElectionRecord {
    std::string mechanism;   // poem | ppoem | poa | poe
    std::string reward_rule; // public | private | private_prose
    double eps3 = 0.0;       // ppoem only, 0 otherwise
    std::string winner;
    std::string second;
    std::string third;
    Coin reward_winner = 0;
    Coin reward_second = 0;
    Coin reward_third = 0;
    Coin m_sum = 0;
    Coin mr = 0;
    bool uniform_fallback = false;
};

struct Endowment {
    std::string owner;
    Coin amount = 0;
};

struct Block {
    std::uint64_t height = 0;
    Hash256 prev_hash{};
    std::uint64_t round_index = 0;
    StateLabel state = StateLabel::Stable;
    int fee_pct = 10;
    double demand_kwh = 0.0;
    std::vector<Trade> trades;
    std::vector<std::string> unsold_slots;
    ElectionRecord election;
    std::vector<Endowment> endowments; // genesis only
    std::string proposer;
    Hash256 proposer_tag{}; // sha256(proposer token || content hash)
    Hash256 block_hash{};   // sha256 of the canonical content bytes
};

// Canonical content bytes (everything except proposer_tag/block_hash);
// the exact layout is documented in docs/block-encoding.md.
std::vector<std::uint8_t> block_content_bytes(const Block& block);
Hash256 block_content_hash(const Block& block);

// Full canonical serialization: content, then proposer_tag, then
// block_hash. decode_block reverses it and throws DecodeError on
// malformed input.
std::vector<std::uint8_t> encode_block(const Block& block);
Block decode_block(const std::vector<std::uint8_t>& bytes);

// Simulated signatures: the registry maps node id -> verification token,
// and a proposer tags its block with sha256(token || content hash).
class KeyRegistry {
  public:
    void register_node(const std::string& id, const Hash256& token);
    bool known(const std::string& id) const;
    const Hash256& token(const std::string& id) const; // throws on unknown id
    static Hash256 derive_token(const std::string& id, std::uint64_t master_seed);

  private:
    std::map<std::string, Hash256> tokens_;
};

Hash256 proposer_tag_for(const Hash256& token, const Hash256& content_hash);

Block make_genesis(const std::vector<Endowment>& endowments);

// Assembles, tags and hashes the next block. Throws if the election has
// no winner, the proposer (= the election winner) is not registered, or
// the round index does not advance past the parent's.
Block build_block(const Block& parent, const MarketRound& round, const ElectionRecord& election,
                  const KeyRegistry& registry);

enum class Reject {
    None,
    HashMismatch,
    ParentLink,
    Height,
    RoundOrder,
    FeeSchedule,
    TradePriceRange,
    TradeFeeArithmetic,
    TradeWelfare,
    ElectionMsum,
    RewardRule,
    RewardConservation,
    WinnerDistinct,
    WinnerCensus,
    ProposerMismatch,
    ProposerUnknown,
    ProposerTag,
    GenesisShape,
    Structure,
};

const char* reject_name(Reject r);

struct ValidationResult {
    bool ok = true;
    Reject reason = Reject::None;
    std::string detail;

    static ValidationResult pass() { return {}; }
    static ValidationResult fail(Reject reason, std::string detail);
};

ValidationResult validate_genesis(const Block& genesis);
ValidationResult validate_block(const Block& block, const Block& parent, const KeyRegistry& registry);
// Revalidates everything from genesis; first failure wins.
ValidationResult validate_chain(const std::vector<Block>& chain, const KeyRegistry& registry);

// Wallet side. Every balance mutation happens inside apply_block, so the
// running totals below make conservation checkable after every block:
// sum(balances) + pool == endowed + minted, exactly.
struct WalletState {
    std::map<std::string, Coin> balances;
    Coin pool = 0;   // mining-fee pool
    Coin minted = 0; // base rewards created so far
    Coin endowed = 0;

    Coin balance(const std::string& id) const;
    Coin balance_sum() const;
    bool conserved() const { return balance_sum() + pool == endowed + minted; }
};

// Applies a block's transfers. All-or-nothing: if any debit would
// overdraw, the state is left untouched and the result names the payer.
ValidationResult apply_block(const Block& block, WalletState& wallets);

// Coin usage policy: VPP coin moves only through market settlement,
// fees, rewards and the authoritative fiat ramp. Direct wallet-to-wallet
// transfers are rejected.
enum class TransferPurpose { EnergySettlement, Fee, Reward, FiatRamp, PeerTransfer };

struct CoinTransfer {
    std::string source;
    std::string dest;
    Coin amount = 0;
    TransferPurpose purpose = TransferPurpose::PeerTransfer;
};

bool coin_policy_allows(const CoinTransfer& transfer);

// Newline-delimited JSON, hex hashes, micro-coin integers.
std::string chain_to_jsonl(const std::vector<Block>& chain);
std::vector<Block> chain_from_jsonl(const std::string& text);

} // namespace vppsim
