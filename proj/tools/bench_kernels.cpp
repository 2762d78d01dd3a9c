// Compares serial vs OpenMP execution of the three data-parallel kernels:
// identity subset sums, payload materialization, and demand sweeps.

#include <chrono>
#include <cstdio>
#include <functional>

#include "ccsim/scheme_grouping.hpp"
#include "ccsim/scheme_mn.hpp"
#include "ccsim/simulator.hpp"

using namespace ccsim;

namespace {

double time_ms(const std::function<void()>& body, int reps) {
    body();  // warm-up
    auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) body();
    auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count() / reps;
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-28s serial=%9.3f ms  parallel=%9.3f ms  speedup=%5.2fx\n", name,
                serial_ms, parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main() {
    {
        auto [params, placement] = grouping_placement(6, 3, 2, 20);
        int k = 4;
        double s = time_ms(
            [&] { union_count_identity(params, placement, k, Exec::Serial); }, 3);
        double p = time_ms(
            [&] { union_count_identity(params, placement, k, Exec::Parallel); }, 3);
        report("union identity K=20 k=4", s, p);
    }
    {
        MnScheme scheme(10, 10, 5, 1);
        FileStore store = random_store(10, scheme.params().F, 4096, 1);
        DemandVector demand = distinct_demand(10, 10);
        auto sent = scheme.deliver(demand);
        double s = time_ms([&] {
            auto copy = sent;
            materialize_payloads(copy, store, Exec::Serial);
        }, 3);
        double p = time_ms([&] {
            auto copy = sent;
            materialize_payloads(copy, store, Exec::Parallel);
        }, 3);
        report("materialize K=10 t=5 4KiB", s, p);
    }
    {
        MnScheme scheme(6, 4, 3, 1);
        FileStore store = random_store(4, scheme.params().F, 256, 2);
        SweepMode mode;  // 4^6 = 4096 demands
        double s = time_ms([&] { sweep_demands(scheme, store, mode, false, Exec::Serial); }, 1);
        double p = time_ms([&] { sweep_demands(scheme, store, mode, false, Exec::Parallel); }, 1);
        report("sweep K=6 N=4 exhaustive", s, p);
    }
    return 0;
}
