#include "vppsim/election.hpp"

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

// Times the serial reference against the OpenMP election kernel on the
// same inputs and verifies the tallies agree exactly — the parallel
// path must be a pure speedup, never a different answer.

using namespace vppsim;

namespace {

double run_timed(const EnergyCensus& census, const ElectionParams& params, std::uint64_t n, Exec policy,
                 CampaignTally& out) {
    auto t0 = std::chrono::steady_clock::now();
    out = run_elections(census, params, n, 42, policy);
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

bool same(const CampaignTally& a, const CampaignTally& b) {
    return a.wins == b.wins && a.seconds == b.seconds && a.thirds == b.thirds && a.rewards == b.rewards &&
           a.fallback_rounds == b.fallback_rounds;
}

} // namespace

int main() {
    EnergyCensus census;
    for (int k = 1; k <= 10; ++k) {
        census.vpp_ids.push_back("VPP" + std::to_string(k));
        census.energy_kwh.push_back(3.0 * k);
    }
    ElectionParams params;
    params.m_sum = coins(120);
    params.mr = coins(500);

#ifdef _OPENMP
    int threads = omp_get_max_threads();
#else
    int threads = 1;
#endif
    std::printf("%-10s %12s %12s %12s %8s %s\n", "mechanism", "elections", "serial_s", "openmp_s", "speedup",
                "identical");
    for (Mechanism m : {Mechanism::Poem, Mechanism::Ppoem}) {
        params.mechanism = m;
        params.eps3 = 0.1;
        params.dq2 = 5.0;
        for (std::uint64_t n : {100'000ULL, 1'000'000ULL}) {
            CampaignTally serial, parallel;
            double ts = run_timed(census, params, n, Exec::Serial, serial);
            double tp = run_timed(census, params, n, Exec::OpenMP, parallel);
            std::printf("%-10s %12llu %12.3f %12.3f %8.2f %s\n", mechanism_name(m),
                        static_cast<unsigned long long>(n), ts, tp, ts / tp,
                        same(serial, parallel) ? "yes" : "NO");
            if (!same(serial, parallel)) return 1;
        }
    }
    std::printf("threads: %d\n", threads);
    return 0;
}
