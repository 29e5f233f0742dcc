#include "vppsim/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vppsim {

namespace {

std::vector<std::string> split_csv_line(const std::string& line, char delim) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == delim) {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

bool parse_double(const std::string& text, double& out) {
    const std::string t = trim(text);
    if (t.empty()) return false;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size() && std::isfinite(out);
}

// days since 1970-01-01 for a civil date (proleptic Gregorian)
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2) / 5 + static_cast<unsigned>(d) - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

} // namespace

bool parse_timestamp(const std::string& text, std::int64_t& out) {
    const std::string t = trim(text);
    if (t.empty()) return false;
    // raw unix seconds
    bool all_digit = t.find_first_not_of("0123456789") == std::string::npos;
    if (all_digit) {
        if (t.size() > 18) return false;
        out = std::strtoll(t.c_str(), nullptr, 10);
        return true;
    }
    // YYYY-MM-DD[ T]HH:MM[:SS]
    int y, mo, d, h, mi, s = 0;
    char sep;
    std::istringstream in(t);
    in >> y;
    if (!in || in.get() != '-') return false;
    in >> mo;
    if (!in || in.get() != '-') return false;
    in >> d;
    if (!in) return false;
    sep = static_cast<char>(in.get());
    if (sep != ' ' && sep != 'T') return false;
    in >> h;
    if (!in || in.get() != ':') return false;
    in >> mi;
    if (!in) return false;
    if (in.peek() == ':') {
        in.get();
        in >> s;
        if (!in) return false;
    }
    in >> std::ws;
    if (!in.eof()) return false;
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23 || mi < 0 || mi > 59 || s < 0 || s > 60) return false;
    out = days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + s;
    return true;
}

LoadResult load_readings_text(const std::string& text, const CsvFormat& fmt, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("ingest: " + origin + ": empty file");
    auto header = split_csv_line(line, fmt.delimiter);
    for (auto& h : header) h = trim(h);
    auto col = [&](const std::string& name) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw std::runtime_error("ingest: " + origin + ": missing column '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t c_cust = col(fmt.customer_col);
    const std::size_t c_ts = col(fmt.timestamp_col);
    const std::size_t c_cons = col(fmt.consumption_col);
    const std::size_t c_gen = col(fmt.generation_col);

    LoadResult result;
    std::size_t line_no = 1;
    auto reject = [&](const std::string& why) {
        ++result.rejected_rows;
        if (result.diagnostics.size() < 20)
            result.diagnostics.push_back(origin + ":" + std::to_string(line_no) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line, fmt.delimiter);
        std::size_t needed = std::max({c_cust, c_ts, c_cons, c_gen}) + 1;
        if (fields.size() < needed) {
            reject("too few fields");
            continue;
        }
        MeterReading r;
        r.prosumer_id = trim(fields[c_cust]);
        if (r.prosumer_id.empty()) {
            reject("empty customer id");
            continue;
        }
        if (!parse_timestamp(fields[c_ts], r.timestamp)) {
            reject("bad timestamp '" + trim(fields[c_ts]) + "'");
            continue;
        }
        if (!parse_double(fields[c_cons], r.consumption_kwh) || !parse_double(fields[c_gen], r.generation_kwh)) {
            reject("bad energy value");
            continue;
        }
        if (r.consumption_kwh < 0.0 || r.generation_kwh < 0.0) {
            reject("negative energy");
            continue;
        }
        result.readings.push_back(std::move(r));
        ++result.accepted_rows;
    }
    if (result.readings.empty())
        throw std::runtime_error("ingest: " + origin + ": no valid rows (" + std::to_string(result.rejected_rows) +
                                 " rejected)");
    std::sort(result.readings.begin(), result.readings.end(), [](const MeterReading& a, const MeterReading& b) {
        if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
        return a.prosumer_id < b.prosumer_id;
    });
    return result;
}

LoadResult load_readings(const std::string& path, const CsvFormat& fmt) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("ingest: cannot open " + path);
    std::ostringstream buf;
    buf << file.rdbuf();
    return load_readings_text(buf.str(), fmt, path);
}

std::vector<VppAssignment> assign_prosumers(std::vector<std::string> ids, const std::vector<int>& allocation) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    long long total = 0;
    for (int n : allocation) {
        if (n < 1) throw std::invalid_argument("assign_prosumers: every VPP needs at least one prosumer");
        total += n;
    }
    if (total != static_cast<long long>(ids.size()))
        throw std::invalid_argument("assign_prosumers: allocation sums to " + std::to_string(total) + " but " +
                                    std::to_string(ids.size()) + " prosumers given");
    std::vector<VppAssignment> out;
    out.reserve(allocation.size());
    std::size_t at = 0;
    for (std::size_t k = 0; k < allocation.size(); ++k) {
        VppAssignment a;
        a.vpp_id = "VPP" + std::to_string(k + 1);
        a.prosumer_ids.assign(ids.begin() + static_cast<std::ptrdiff_t>(at),
                              ids.begin() + static_cast<std::ptrdiff_t>(at + allocation[k]));
        at += static_cast<std::size_t>(allocation[k]);
        out.push_back(std::move(a));
    }
    return out;
}

HourSlice hour_slice(const std::vector<MeterReading>& readings, std::int64_t hour_start) {
    if (readings.empty()) throw std::invalid_argument("hour_slice: no readings");
    std::int64_t lo = readings.front().timestamp - (((readings.front().timestamp % 3600) + 3600) % 3600);
    std::int64_t hi = readings.back().timestamp;
    if (hour_start < lo || hour_start > hi)
        throw std::out_of_range("hour_slice: hour " + std::to_string(hour_start) + " outside dataset range [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "]");
    HourSlice slice;
    slice.hour_start = hour_start;
    for (const auto& r : readings) {
        if (r.timestamp < hour_start || r.timestamp >= hour_start + 3600) continue;
        slice.consumption[r.prosumer_id] += r.consumption_kwh;
        slice.generation[r.prosumer_id] += r.generation_kwh;
        slice.total_consumption += r.consumption_kwh;
        slice.total_generation += r.generation_kwh;
    }
    return slice;
}

std::map<std::string, double> hourly_surplus(const std::vector<MeterReading>& readings, std::int64_t hour_start) {
    HourSlice slice = hour_slice(readings, hour_start);
    std::map<std::string, double> net;
    for (const auto& [id, gen] : slice.generation) net[id] = gen;
    for (const auto& [id, cons] : slice.consumption) net[id] -= cons;
    return net;
}

std::vector<std::int64_t> hour_starts(const std::vector<MeterReading>& readings) {
    std::vector<std::int64_t> hours;
    for (const auto& r : readings) {
        std::int64_t h = r.timestamp - (((r.timestamp % 3600) + 3600) % 3600);
        if (hours.empty() || hours.back() != h) hours.push_back(h);
    }
    // readings are sorted, so hours is sorted; dedupe handles repeats
    hours.erase(std::unique(hours.begin(), hours.end()), hours.end());
    return hours;
}

std::vector<double> hourly_total_load(const std::vector<MeterReading>& readings) {
    // readings are sorted by timestamp, so one pass accumulates each bucket
    std::vector<double> load;
    std::int64_t cur = 0;
    bool open = false;
    for (const auto& r : readings) {
        std::int64_t h = r.timestamp - (((r.timestamp % 3600) + 3600) % 3600);
        if (!open || h != cur) {
            load.push_back(0.0);
            cur = h;
            open = true;
        }
        load.back() += r.consumption_kwh;
    }
    return load;
}

} // namespace vppsim
