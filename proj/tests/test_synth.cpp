#include <doctest.h>

#include "vppsim/ingest.hpp"
#include "vppsim/synth.hpp"

#include "oracles/oracles.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>

using namespace vppsim;

TEST_CASE("generated data is deterministic in the seed") {
    SynthSpec spec;
    spec.homes = 6;
    spec.days = 2;
    std::string a = generate_dataset_csv(spec);
    std::string b = generate_dataset_csv(spec);
    CHECK_EQ(a, b);
    spec.seed = 2;
    CHECK_NE(a, generate_dataset_csv(spec));
}

TEST_CASE("generated data parses cleanly through ingest") {
    SynthSpec spec;
    spec.homes = 8;
    spec.days = 3;
    LoadResult res = load_readings_text(generate_dataset_csv(spec), CsvFormat{}, "synth");
    CHECK_EQ(res.rejected_rows, 0);
    CHECK_EQ(res.accepted_rows, res.readings.size());
    // one reading per home per hour
    CHECK_EQ(res.readings.size(), static_cast<std::size_t>(8 * 3 * 24));
    auto hours = hour_starts(res.readings);
    CHECK_EQ(hours.size(), static_cast<std::size_t>(3 * 24));
    CHECK_EQ(hours.front(), spec.start_timestamp);
    for (const MeterReading& r : res.readings) {
        CHECK_GE(r.consumption_kwh, 0.0);
        CHECK_GE(r.generation_kwh, 0.0);
    }
}

TEST_CASE("consumption outweighs generation in aggregate") {
    SynthSpec spec;
    spec.homes = 20;
    spec.days = 5;
    LoadResult res = load_readings_text(generate_dataset_csv(spec), CsvFormat{}, "synth");
    double cons = 0.0, gen = 0.0;
    for (const MeterReading& r : res.readings) {
        cons += r.consumption_kwh;
        gen += r.generation_kwh;
    }
    CHECK_GT(cons, gen);
    // but the solar curve must make somebody a seller somewhere
    bool any_surplus = false;
    for (std::int64_t h : hour_starts(res.readings))
        for (const auto& [id, s] : hourly_surplus(res.readings, h))
            if (s > 0.0) any_surplus = true;
    CHECK(any_surplus);
}

TEST_CASE("hourly totals agree with a naive reparse of the csv text") {
    SynthSpec spec;
    spec.homes = 5;
    spec.days = 2;
    spec.seed = 9;
    std::string csv = generate_dataset_csv(spec);
    LoadResult res = load_readings_text(csv, CsvFormat{}, "synth");
    auto oracle = oracles::csv_hourly_consumption(csv);
    auto hours = hour_starts(res.readings);
    auto load = hourly_total_load(res.readings);
    REQUIRE_EQ(hours.size(), load.size());
    REQUIRE_EQ(oracle.size(), hours.size());
    for (std::size_t i = 0; i < hours.size(); ++i) {
        REQUIRE_EQ(oracle.count(hours[i]), 1);
        CHECK_EQ(load[i], doctest::Approx(oracle.at(hours[i])).epsilon(1e-12));
    }
}

TEST_CASE("file writer reports the row count") {
    SynthSpec spec;
    spec.homes = 3;
    spec.days = 1;
    std::string path = "synth_writer_check.csv";
    std::size_t rows = write_dataset_csv(spec, path);
    CHECK_EQ(rows, static_cast<std::size_t>(3 * 24));
    LoadResult res = load_readings(path, CsvFormat{});
    CHECK_EQ(res.readings.size(), rows);
    std::remove(path.c_str());
}
