#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ccsim/scheme_model.hpp"
#include "ccsim/transmission.hpp"

namespace ccsim {

/// Deterministic 64-bit PRNG (splitmix64); used for reproducible random
/// payloads and demand sweeps.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

/// N files split into F equal byte blocks each, zero-padded.
struct FileStore {
    std::uint64_t F = 0;
    std::uint64_t L = 0;  // bytes per subfile block
    std::vector<std::vector<std::vector<std::uint8_t>>> blocks;  // [file][slot]
    std::vector<std::uint64_t> original_lengths;

    int file_count() const { return static_cast<int>(blocks.size()); }
    const std::vector<std::uint8_t>& block(int file, std::uint64_t slot) const {
        return blocks[static_cast<size_t>(file)][static_cast<size_t>(slot)];
    }
};

/// Splits each input into F blocks of L = max(1, ceil(max_len / F)) bytes,
/// zero-padding to F*L. Throws std::invalid_argument on empty input list.
FileStore pack(const std::vector<std::vector<std::uint8_t>>& inputs, std::uint64_t F);

/// Reassembles file `file` truncated to its original length.
std::vector<std::uint8_t> unpack(const FileStore& store, int file);

FileStore random_store(int N, std::uint64_t F, std::uint64_t file_bytes,
                       std::uint64_t seed);

/// A user's materialized cache: the blocks of every file at its cached slots.
class UserCache {
  public:
    UserCache(const FileStore& store, const std::vector<std::uint32_t>& slots);

    bool has_slot(std::uint64_t slot) const;
    const std::vector<std::uint8_t>& block(int file, std::uint64_t slot) const;
    const std::vector<std::uint32_t>& slots() const { return slots_; }
    std::uint64_t block_bytes() const { return L_; }
    std::uint64_t total_slots() const { return F_; }

  private:
    std::vector<std::uint32_t> slots_;
    std::vector<std::vector<std::vector<std::uint8_t>>> blocks_;  // [file][slot idx]
    std::uint64_t L_ = 0;
    std::uint64_t F_ = 0;
};

/// A concrete symmetric scheme instance: placement plus delivery/decoding.
class Scheme {
  public:
    virtual ~Scheme() = default;

    const SchemeParams& params() const { return params_; }
    const PlacementProfile& placement() const { return placement_; }

    virtual std::string name() const = 0;
    virtual std::string transcript_header(const DemandVector& demand) const = 0;
    /// Symbolic delivery: labels and terms; payloads left empty.
    virtual std::vector<Transmission> deliver(const DemandVector& demand) const = 0;
    /// Reconstructs user's requested file as F*L padded bytes.
    virtual std::vector<std::uint8_t> decode(int user, const DemandVector& demand,
                                             const std::vector<Transmission>& sent,
                                             const UserCache& cache) const = 0;

  protected:
    SchemeParams params_;
    PlacementProfile placement_;
};

struct SimulationResult {
    DemandVector demand;
    std::uint64_t transmissions_sent = 0;
    Rational rate_measured;  // transmissions_sent / F
    std::vector<bool> user_ok;
    bool ok = false;
    std::string first_failure;  // names the first diverging (user, slot)

    std::string to_record() const;   // single machine-readable line
    std::string to_summary() const;  // human-readable
};

/// Fills transmission payloads by XOR-ing the referenced subfile blocks.
void materialize_payloads(std::vector<Transmission>& transmissions,
                          const FileStore& store, Exec exec = Exec::Parallel);

/// Full round: placement caches, delivery, per-user decode, byte verification.
SimulationResult run(const Scheme& scheme, const FileStore& store,
                     const DemandVector& demand, Exec exec = Exec::Parallel);

std::string render_transcript(const Scheme& scheme, const DemandVector& demand,
                              const std::vector<Transmission>& transmissions);

struct SweepMode {
    bool exhaustive = true;
    std::uint64_t random_count = 500;
    std::uint64_t seed = 0;
    std::uint64_t exhaustive_cap = 50000;
};

struct SweepResult {
    Rational worst_rate;
    DemandVector worst_demand;
    bool all_ok = true;
    std::uint64_t demands_run = 0;
    std::vector<std::pair<DemandVector, std::uint64_t>> per_demand;  // demand, count
};

/// Max measured rate over a demand set. Exhaustive mode enumerates all N^K
/// demands (usage error beyond the cap); random mode draws seeded demands.
/// Deterministic; `record_table` keeps the per-demand table.
SweepResult sweep_demands(const Scheme& scheme, const FileStore& store,
                          const SweepMode& mode, bool record_table = false,
                          Exec exec = Exec::Parallel);

/// Canonical worst case: files 0..min(K,N)-1 then wraparound.
DemandVector distinct_demand(int K, int N);

}  // namespace ccsim
