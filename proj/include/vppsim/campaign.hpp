#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vppsim/auction.hpp"
#include "vppsim/config.hpp"
#include "vppsim/election.hpp"
#include "vppsim/ingest.hpp"
#include "vppsim/ledger.hpp"
#include "vppsim/system_state.hpp"

namespace vppsim {

// One chain run under one election mechanism. The private mechanism
// expands to one track per epsilon in the configured grid, so its
// outcomes can be compared across budgets on otherwise identical input.
struct TrackSpec {
    std::string label; // "poem", "ppoem-0.1", "poa", "poe"
    Mechanism mechanism = Mechanism::Poem;
    double eps3 = 0.0; // private tracks only
};

std::vector<TrackSpec> expand_tracks(const std::vector<std::string>& mechanisms,
                                     const std::vector<double>& eps3_grid);

// Per-round inputs shared verbatim by every track: hour context and the
// raw order books. Only wallet admission and pricing differ per track,
// so cross-mechanism numbers stay comparable.
struct RoundInputs {
    std::uint64_t round = 0;
    std::int64_t hour_start = 0;
    double demand_kwh = 0.0; // the hour's total consumption, G_E
    std::vector<Ask> asks;   // prosumers with an hourly surplus
    std::vector<Bid> bids;   // prosumers with an hourly deficit, pre-admission
    std::vector<double> production_kwh;  // per VPP this hour
    std::vector<double> consumption_kwh; // per VPP this hour
};

struct TrackSummary {
    std::string label;
    std::uint64_t blocks = 0;
    std::uint64_t trades = 0;
    std::uint64_t unsold = 0;
    double traded_kwh = 0.0;
    Coin tx_fees = 0;
    Coin mining_fees = 0;
    Coin minted = 0;
    std::vector<std::uint64_t> wins; // per VPP, index-aligned with vpp_ids()
    std::vector<std::uint64_t> seconds;
    std::vector<std::uint64_t> thirds;
    std::vector<Coin> rewards;
    std::uint64_t fallback_rounds = 0;
    bool revalidated = false; // on-disk chain re-checked from genesis
};

struct CampaignResult {
    bool ok = true;
    std::vector<std::string> failures;
    std::vector<TrackSummary> tracks;
    std::string summary_json;
    std::string out_dir;
};

// Owns the dataset, the prosumer->VPP assignment, the fee thresholds,
// the key registry and the genesis endowments; runs market rounds and
// full campaigns from them. Everything derives from the config and its
// master seed, so two engines on the same config agree bit for bit.
class CampaignEngine {
  public:
    explicit CampaignEngine(CampaignConfig cfg);

    const CampaignConfig& config() const { return cfg_; }
    const LoadResult& data() const { return data_; }
    const std::vector<VppAssignment>& assignment() const { return assignment_; }
    const std::vector<std::string>& vpp_ids() const { return vpp_ids_; }
    const StateThresholds& thresholds() const { return thresholds_; }
    const KeyRegistry& registry() const { return registry_; }
    std::size_t hour_count() const { return hours_.size(); }

    // Rounds cycle through the dataset's hours in order; the books are a
    // pure function of (config, round).
    RoundInputs round_inputs(std::uint64_t round) const;

    // Admission (bid within balance), clearing, pricing and settlement
    // for one track. Private tracks price each trade from the stream
    // (seed, "<label>:price", round).
    MarketRound run_market(const RoundInputs& inputs, const TrackSpec& spec, const WalletState& wallets) const;

    // Census, election and ledger record for a settled round, drawing
    // from (seed, "<label>:election", round).
    ElectionRecord run_round_election(const MarketRound& round, const RoundInputs& inputs,
                                      const TrackSpec& spec) const;

    Block genesis() const;

    // Full campaign: every track's chain is streamed to
    // <out_dir>/chains/<label>.jsonl and re-validated from disk; reports
    // and the manifest land under <out_dir>. Failures are collected, not
    // thrown, so a red run still writes everything it measured.
    CampaignResult run(const std::string& out_dir);

  private:
    CampaignConfig cfg_;
    LoadResult data_;
    std::vector<VppAssignment> assignment_;
    std::map<std::string, std::string> vpp_of_; // prosumer -> vpp
    std::map<std::string, std::size_t> vpp_index_;
    std::vector<std::string> vpp_ids_;
    StateThresholds thresholds_;
    std::vector<std::int64_t> hours_;
    std::vector<HourSlice> slices_;                    // aligned with hours_
    std::vector<std::vector<double>> vpp_production_;  // [hour][vpp]
    std::vector<std::vector<double>> vpp_consumption_; // [hour][vpp]
    KeyRegistry registry_;
    std::vector<Endowment> endowments_;
};

// Tokens are derived from the master seed, so a verifier can rebuild the
// registry from the manifest alone.
KeyRegistry registry_for(const std::vector<std::string>& vpp_ids, std::uint64_t master_seed);

// Streaming revalidation of a chain file written by CampaignEngine::run:
// one JSON block per line, checked from genesis without holding more
// than one parent in memory. Also replays wallets and checks
// conservation after every block.
ValidationResult validate_chain_file(const std::string& path, const KeyRegistry& registry);

} // namespace vppsim
