#include "ccsim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>
#include <stdexcept>

namespace ccsim {
namespace {

std::string demand_csv(const DemandVector& demand) {
    std::ostringstream os;
    for (size_t i = 0; i < demand.d.size(); ++i) {
        if (i) os << ",";
        os << demand.d[i];
    }
    return os.str();
}

std::string rational_str(const Rational& q) {
    return q.get_str();
}

}  // namespace

std::string to_hex(const std::vector<std::uint8_t>& bytes) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

void xor_into(std::vector<std::uint8_t>& acc, const std::vector<std::uint8_t>& block) {
    if (acc.size() != block.size())
        throw std::logic_error("xor_into: block length mismatch");
    for (size_t i = 0; i < acc.size(); ++i) acc[i] ^= block[i];
}

FileStore pack(const std::vector<std::vector<std::uint8_t>>& inputs, std::uint64_t F) {
    if (inputs.empty()) throw std::invalid_argument("pack: no input files");
    if (F < 1) throw std::invalid_argument("pack: F must be positive");
    std::uint64_t max_len = 0;
    for (const auto& in : inputs) max_len = std::max<std::uint64_t>(max_len, in.size());
    const std::uint64_t L = std::max<std::uint64_t>(1, (max_len + F - 1) / F);

    FileStore store;
    store.F = F;
    store.L = L;
    store.blocks.resize(inputs.size());
    store.original_lengths.reserve(inputs.size());
    for (size_t i = 0; i < inputs.size(); ++i) {
        store.original_lengths.push_back(inputs[i].size());
        std::vector<std::uint8_t> padded = inputs[i];
        padded.resize(F * L, 0);
        store.blocks[i].resize(F);
        for (std::uint64_t j = 0; j < F; ++j)
            store.blocks[i][j].assign(padded.begin() + static_cast<long>(j * L),
                                      padded.begin() + static_cast<long>((j + 1) * L));
    }
    return store;
}

std::vector<std::uint8_t> unpack(const FileStore& store, int file) {
    std::vector<std::uint8_t> out;
    out.reserve(store.F * store.L);
    for (std::uint64_t j = 0; j < store.F; ++j) {
        const auto& block = store.block(file, j);
        out.insert(out.end(), block.begin(), block.end());
    }
    out.resize(store.original_lengths[static_cast<size_t>(file)]);
    return out;
}

FileStore random_store(int N, std::uint64_t F, std::uint64_t file_bytes,
                       std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<std::vector<std::uint8_t>> inputs(static_cast<size_t>(N));
    for (auto& in : inputs) {
        in.resize(file_bytes);
        for (auto& byte : in) byte = static_cast<std::uint8_t>(rng.next() & 0xff);
    }
    return pack(inputs, F);
}

UserCache::UserCache(const FileStore& store, const std::vector<std::uint32_t>& slots)
    : slots_(slots), L_(store.L), F_(store.F) {
    blocks_.resize(static_cast<size_t>(store.file_count()));
    for (int i = 0; i < store.file_count(); ++i) {
        blocks_[static_cast<size_t>(i)].reserve(slots_.size());
        for (std::uint32_t j : slots_)
            blocks_[static_cast<size_t>(i)].push_back(store.block(i, j));
    }
}

bool UserCache::has_slot(std::uint64_t slot) const {
    return std::binary_search(slots_.begin(), slots_.end(),
                              static_cast<std::uint32_t>(slot));
}

const std::vector<std::uint8_t>& UserCache::block(int file, std::uint64_t slot) const {
    auto it = std::lower_bound(slots_.begin(), slots_.end(),
                               static_cast<std::uint32_t>(slot));
    if (it == slots_.end() || *it != slot)
        throw std::logic_error("user cache: slot not cached");
    return blocks_[static_cast<size_t>(file)]
                  [static_cast<size_t>(it - slots_.begin())];
}

void materialize_payloads(std::vector<Transmission>& transmissions,
                          const FileStore& store, Exec exec) {
    const auto fill = [&](Transmission& tx) {
        tx.payload.assign(store.L, 0);
        for (const auto& term : tx.terms) xor_into(tx.payload, store.block(term.file, term.slot));
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(transmissions.size()); ++i)
            fill(transmissions[static_cast<size_t>(i)]);
    } else {
        for (auto& tx : transmissions) fill(tx);
    }
}

std::string SimulationResult::to_record() const {
    std::ostringstream os;
    os << "result ok=" << (ok ? 1 : 0) << " transmissions=" << transmissions_sent
       << " rate=" << rational_str(rate_measured) << " demand=" << demand_csv(demand)
       << " failure=" << (first_failure.empty() ? "-" : first_failure);
    return os.str();
}

std::string SimulationResult::to_summary() const {
    std::ostringstream os;
    os << "demand (" << demand_csv(demand) << "): " << transmissions_sent
       << " transmissions, rate " << rational_str(rate_measured) << ", decode "
       << (ok ? "ok" : ("FAILED at " + first_failure));
    return os.str();
}

SimulationResult run(const Scheme& scheme, const FileStore& store,
                     const DemandVector& demand, Exec exec) {
    const SchemeParams& params = scheme.params();
    if (store.file_count() != params.N || store.F != params.F)
        throw std::invalid_argument("run: store shape does not match scheme");
    if (demand.user_count() != params.K)
        throw std::invalid_argument("run: demand length != K");
    for (int d : demand.d)
        if (d < 0 || d >= params.N)
            throw std::invalid_argument("run: demand file index out of range");

    std::vector<Transmission> transmissions = scheme.deliver(demand);
    materialize_payloads(transmissions, store, exec);

    SimulationResult result;
    result.demand = demand;
    result.transmissions_sent = transmissions.size();
    result.rate_measured = Rational(static_cast<unsigned long>(transmissions.size()),
                                    static_cast<unsigned long>(params.F));
    result.rate_measured.canonicalize();
    result.user_ok.assign(static_cast<size_t>(params.K), false);

    std::vector<std::string> failures(static_cast<size_t>(params.K));
    const auto decode_one = [&](int u) {
        UserCache cache(store, scheme.placement().user_slots[static_cast<size_t>(u)]);
        std::vector<std::uint8_t> got = scheme.decode(u, demand, transmissions, cache);
        const int file = demand.d[static_cast<size_t>(u)];
        bool ok = true;
        for (std::uint64_t j = 0; j < store.F && ok; ++j) {
            const auto& want = store.block(file, j);
            if (std::memcmp(got.data() + j * store.L, want.data(), store.L) != 0) {
                failures[static_cast<size_t>(u)] =
                    "user=" + std::to_string(u) + " slot=" + std::to_string(j);
                ok = false;
            }
        }
        result.user_ok[static_cast<size_t>(u)] = ok;
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int u = 0; u < params.K; ++u) decode_one(u);
    } else {
        for (int u = 0; u < params.K; ++u) decode_one(u);
    }

    result.ok = std::all_of(result.user_ok.begin(), result.user_ok.end(),
                            [](bool b) { return b; });
    if (!result.ok) {
        for (const auto& f : failures)
            if (!f.empty()) { result.first_failure = f; break; }
    }
    return result;
}

std::string render_transcript(const Scheme& scheme, const DemandVector& demand,
                              const std::vector<Transmission>& transmissions) {
    std::ostringstream os;
    os << scheme.transcript_header(demand) << "\n";
    for (const auto& tx : transmissions)
        os << tx.label << " payload=" << to_hex(tx.payload) << "\n";
    return os.str();
}

DemandVector distinct_demand(int K, int N) {
    DemandVector demand;
    demand.d.resize(static_cast<size_t>(K));
    for (int u = 0; u < K; ++u) demand.d[static_cast<size_t>(u)] = u % std::min(K, N);
    return demand;
}

SweepResult sweep_demands(const Scheme& scheme, const FileStore& store,
                          const SweepMode& mode, bool record_table, Exec exec) {
    const SchemeParams& params = scheme.params();
    std::vector<DemandVector> demands;
    if (mode.exhaustive) {
        double total = std::pow(static_cast<double>(params.N), params.K);
        if (total > static_cast<double>(mode.exhaustive_cap))
            throw std::invalid_argument(
                "sweep: N^K exceeds the exhaustive cap; use random mode");
        std::uint64_t count = 1;
        for (int u = 0; u < params.K; ++u) count *= static_cast<std::uint64_t>(params.N);
        demands.reserve(count);
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            DemandVector d;
            d.d.resize(static_cast<size_t>(params.K));
            std::uint64_t rest = idx;
            for (int u = 0; u < params.K; ++u) {
                d.d[static_cast<size_t>(u)] = static_cast<int>(rest % params.N);
                rest /= static_cast<std::uint64_t>(params.N);
            }
            demands.push_back(std::move(d));
        }
    } else {
        SplitMix64 rng(mode.seed);
        demands.reserve(mode.random_count);
        for (std::uint64_t i = 0; i < mode.random_count; ++i) {
            DemandVector d;
            d.d.resize(static_cast<size_t>(params.K));
            for (int u = 0; u < params.K; ++u)
                d.d[static_cast<size_t>(u)] =
                    static_cast<int>(rng.next() % static_cast<std::uint64_t>(params.N));
            demands.push_back(std::move(d));
        }
    }

    std::vector<std::uint64_t> counts(demands.size(), 0);
    std::vector<std::uint8_t> oks(demands.size(), 0);
    const auto run_one = [&](size_t i) {
        SimulationResult r = run(scheme, store, demands[i], Exec::Serial);
        counts[i] = r.transmissions_sent;
        oks[i] = r.ok ? 1 : 0;
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(demands.size()); ++i)
            run_one(static_cast<size_t>(i));
    } else {
        for (size_t i = 0; i < demands.size(); ++i) run_one(i);
    }

    SweepResult out;
    out.demands_run = demands.size();
    size_t worst = 0;
    for (size_t i = 0; i < demands.size(); ++i) {
        if (!oks[i]) out.all_ok = false;
        if (counts[i] > counts[worst]) worst = i;
        if (record_table) out.per_demand.emplace_back(demands[i], counts[i]);
    }
    out.worst_demand = demands[worst];
    out.worst_rate = Rational(static_cast<unsigned long>(counts[worst]),
                              static_cast<unsigned long>(params.F));
    out.worst_rate.canonicalize();
    return out;
}

}  // namespace ccsim
