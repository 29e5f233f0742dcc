#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace vppsim {

struct MeterReading {
    std::string prosumer_id;
    std::int64_t timestamp; // unix seconds, UTC
    double consumption_kwh;
    double generation_kwh;
};

struct CsvFormat {
    std::string customer_col = "customer";
    std::string timestamp_col = "timestamp";
    std::string consumption_col = "consumption_kwh";
    std::string generation_col = "generation_kwh";
    char delimiter = ',';
};

struct LoadResult {
    std::vector<MeterReading> readings; // sorted by (timestamp, prosumer_id)
    std::size_t accepted_rows = 0;
    std::size_t rejected_rows = 0;
    std::vector<std::string> diagnostics; // first few reject reasons, for reports
};

// Reads a meter CSV. Rows with unparseable fields or negative energy are
// rejected and counted, never silently dropped. Throws if the file is
// unreadable, the header lacks a configured column, or no valid row remains.
LoadResult load_readings(const std::string& path, const CsvFormat& fmt);

// Same parser over an in-memory document; load_readings delegates here.
LoadResult load_readings_text(const std::string& text, const CsvFormat& fmt, const std::string& origin);

// Accepts unix seconds, "YYYY-MM-DD HH:MM[:SS]" and the T-separated form.
// Returns false on anything else.
bool parse_timestamp(const std::string& text, std::int64_t& out);

struct VppAssignment {
    std::string vpp_id;
    std::vector<std::string> prosumer_ids;
};

// Splits the (lexicographically sorted) prosumer ids into consecutive
// groups of the given sizes. Group k becomes "VPP<k+1>". Throws unless
// every size is >= 1 and sizes sum to ids.size().
std::vector<VppAssignment> assign_prosumers(std::vector<std::string> ids, const std::vector<int>& allocation);

struct HourSlice {
    std::int64_t hour_start = 0;
    std::map<std::string, double> consumption; // per prosumer, this hour
    std::map<std::string, double> generation;
    double total_consumption = 0.0;
    double total_generation = 0.0;
};

// All readings whose timestamp falls in [hour_start, hour_start+3600),
// summed per prosumer. Throws if hour_start lies outside the dataset range.
HourSlice hour_slice(const std::vector<MeterReading>& readings, std::int64_t hour_start);

// generation - consumption per prosumer for the hour; negative = deficit.
std::map<std::string, double> hourly_surplus(const std::vector<MeterReading>& readings, std::int64_t hour_start);

// Distinct hour bucket starts present in the dataset, ascending.
std::vector<std::int64_t> hour_starts(const std::vector<MeterReading>& readings);

// Total consumption per hour bucket across all prosumers, ascending by hour.
std::vector<double> hourly_total_load(const std::vector<MeterReading>& readings);

} // namespace vppsim
