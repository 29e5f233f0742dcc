#pragma once

#include <cstdint>
#include <string>

namespace vppsim {

// Deterministic synthetic smart-meter data, schema-compatible with the
// ingest module's default column layout. Homes follow a morning/evening
// consumption profile and a midday solar curve; consumption outweighs
// generation on average, so a VPP's absolute imbalance grows with its
// prosumer count (the estimation-baseline ordering depends on that).
struct SynthSpec {
    int homes = 100;
    int days = 7;
    std::int64_t start_timestamp = 1735689600; // 2025-01-01 00:00 UTC
    std::uint64_t seed = 1;
};

std::string generate_dataset_csv(const SynthSpec& spec);

// Convenience: generate and write to a file; returns rows written.
std::size_t write_dataset_csv(const SynthSpec& spec, const std::string& path);

} // namespace vppsim
