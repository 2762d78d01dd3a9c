#include "doctest.h"

#include <algorithm>
#include <stdexcept>

#include "ccsim/scheme_grouping.hpp"
#include "ccsim/scheme_mn.hpp"
#include "ccsim/simulator.hpp"

using namespace ccsim;

TEST_CASE("pack splits and pads") {
    SUBCASE("even split") {
        FileStore store = pack({{1, 2, 3, 4, 5, 6}}, 3);
        CHECK(store.L == 2);
        CHECK(store.block(0, 0) == std::vector<std::uint8_t>{1, 2});
        CHECK(store.block(0, 2) == std::vector<std::uint8_t>{5, 6});
    }
    SUBCASE("L from the longest input, zero padding") {
        FileStore store = pack({{1, 2, 3, 4, 5}, {9, 9, 9, 9, 9, 9, 9}}, 3);
        CHECK(store.L == 3);  // ceil(7/3)
        CHECK(store.block(0, 1) == std::vector<std::uint8_t>{4, 5, 0});
        CHECK(store.block(0, 2) == std::vector<std::uint8_t>{0, 0, 0});
        CHECK(store.block(1, 2) == std::vector<std::uint8_t>{9, 0, 0});
    }
    SUBCASE("empty input list is a usage error") {
        CHECK_THROWS_AS(pack({}, 3), std::invalid_argument);
    }
    SUBCASE("all-empty files still get L = 1") {
        FileStore store = pack({{}}, 4);
        CHECK(store.L == 1);
        CHECK(unpack(store, 0).empty());
    }
}

TEST_CASE("unpack(pack(x)) roundtrip for random inputs") {
    SplitMix64 rng(123);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<std::vector<std::uint8_t>> inputs;
        int count = 1 + static_cast<int>(rng.next() % 4);
        for (int i = 0; i < count; ++i) {
            std::vector<std::uint8_t> file(rng.next() % 100);
            for (auto& b : file) b = static_cast<std::uint8_t>(rng.next() & 0xff);
            inputs.push_back(std::move(file));
        }
        std::uint64_t F = 1 + rng.next() % 8;
        FileStore store = pack(inputs, F);
        for (size_t i = 0; i < inputs.size(); ++i)
            CHECK(unpack(store, static_cast<int>(i)) == inputs[i]);
    }
}

TEST_CASE("run reports rate_measured * F = transmissions_sent") {
    MnScheme scheme(4, 3, 2, 1);
    FileStore store = random_store(3, scheme.params().F, 64, 8);
    SimulationResult r = run(scheme, store, DemandVector{{0, 1, 2, 0}});
    CHECK(r.ok);
    CHECK(r.rate_measured * Bint(static_cast<unsigned long>(scheme.params().F)) ==
          Rational(static_cast<unsigned long>(r.transmissions_sent)));
}

TEST_CASE("run rejects mismatched shapes") {
    MnScheme scheme(3, 3, 1, 1);
    FileStore store = random_store(3, scheme.params().F, 16, 0);
    CHECK_THROWS_AS(run(scheme, store, DemandVector{{0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(run(scheme, store, DemandVector{{0, 1, 5}}), std::invalid_argument);
    FileStore bad = random_store(2, scheme.params().F, 16, 0);
    CHECK_THROWS_AS(run(scheme, bad, DemandVector{{0, 1, 2}}), std::invalid_argument);
}

TEST_CASE("serial and parallel execution agree") {
    GroupingScheme scheme(5, 2, 2, 10);
    FileStore store = random_store(10, scheme.params().F, 48, 17);
    DemandVector demand = distinct_demand(10, 10);
    SimulationResult serial = run(scheme, store, demand, Exec::Serial);
    SimulationResult parallel = run(scheme, store, demand, Exec::Parallel);
    CHECK(serial.ok);
    CHECK(parallel.ok);
    CHECK(serial.transmissions_sent == parallel.transmissions_sent);
    CHECK(serial.rate_measured == parallel.rate_measured);

    auto sent_a = scheme.deliver(demand);
    auto sent_b = scheme.deliver(demand);
    materialize_payloads(sent_a, store, Exec::Serial);
    materialize_payloads(sent_b, store, Exec::Parallel);
    REQUIRE(sent_a.size() == sent_b.size());
    for (size_t i = 0; i < sent_a.size(); ++i) CHECK(sent_a[i].payload == sent_b[i].payload);
}

TEST_CASE("payload is independent of XOR term order") {
    MnScheme scheme(4, 4, 2, 1);
    DemandVector demand = distinct_demand(4, 4);
    FileStore store = random_store(4, scheme.params().F, 32, 9);
    auto sent = scheme.deliver(demand);
    auto shuffled = sent;
    for (auto& tx : shuffled) std::reverse(tx.terms.begin(), tx.terms.end());
    materialize_payloads(sent, store);
    materialize_payloads(shuffled, store);
    for (size_t i = 0; i < sent.size(); ++i) CHECK(sent[i].payload == shuffled[i].payload);
}

TEST_CASE("sweep_demands") {
    SUBCASE("mn K=3 N=3 t=1: exhaustive worst rate 1") {
        MnScheme scheme(3, 3, 1, 1);
        FileStore store = random_store(3, scheme.params().F, 24, 12);
        SweepResult sweep = sweep_demands(scheme, store, SweepMode{}, true);
        CHECK(sweep.all_ok);
        CHECK(sweep.demands_run == 27);
        CHECK(sweep.per_demand.size() == 27);
        CHECK(sweep.worst_rate == Rational(1));
        CHECK(sweep.worst_demand.distinct_files() >= 2);
    }
    SUBCASE("mn K=3 N=1 t=1: worst rate 2/3") {
        MnScheme scheme(3, 1, 1, 1);
        FileStore store = random_store(1, scheme.params().F, 24, 12);
        SweepResult sweep = sweep_demands(scheme, store, SweepMode{});
        CHECK(sweep.worst_rate == Rational(2, 3));
    }
    SUBCASE("grouping rate is demand independent") {
        GroupingScheme scheme(4, 1, 2, 4);
        FileStore store = random_store(4, scheme.params().F, 24, 12);
        SweepResult sweep = sweep_demands(scheme, store, SweepMode{}, true);
        for (const auto& [demand, count] : sweep.per_demand) CHECK(count == 4);
    }
    SUBCASE("exhaustive over cap is a usage error advising random mode") {
        MnScheme scheme(6, 8, 2, 1);
        FileStore store = random_store(8, scheme.params().F, 8, 0);
        SweepMode mode;  // 8^6 > 50000
        CHECK_THROWS_WITH_AS(sweep_demands(scheme, store, mode),
                             doctest::Contains("use random mode"), std::invalid_argument);
    }
    SUBCASE("random mode is deterministic given seed") {
        MnScheme scheme(6, 8, 2, 1);
        FileStore store = random_store(8, scheme.params().F, 8, 0);
        SweepMode mode;
        mode.exhaustive = false;
        mode.random_count = 50;
        mode.seed = 77;
        SweepResult a = sweep_demands(scheme, store, mode);
        SweepResult b = sweep_demands(scheme, store, mode);
        CHECK(a.all_ok);
        CHECK(a.worst_rate == b.worst_rate);
        CHECK(a.worst_demand.d == b.worst_demand.d);
    }
}

TEST_CASE("transcripts are deterministic for a fixed seed") {
    for (int rep = 0; rep < 2; ++rep) {
        MnScheme scheme(4, 4, 2, 1);
        DemandVector demand = distinct_demand(4, 4);
        FileStore store = random_store(4, scheme.params().F, 64, 31);
        auto sent = scheme.deliver(demand);
        materialize_payloads(sent, store);
        static std::string first;
        std::string transcript = render_transcript(scheme, demand, sent);
        if (rep == 0)
            first = transcript;
        else
            CHECK(transcript == first);
    }
}

TEST_CASE("simulation result rendering") {
    MnScheme scheme(3, 3, 1, 1);
    FileStore store = random_store(3, scheme.params().F, 16, 2);
    SimulationResult r = run(scheme, store, DemandVector{{0, 1, 2}});
    CHECK(r.to_record() == "result ok=1 transmissions=3 rate=1 demand=0,1,2 failure=-");
    CHECK(r.to_summary().find("rate 1") != std::string::npos);
}
