#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ccsim/combinatorics.hpp"

namespace ccsim {

/// Execution policy for the data-parallel kernels. Serial variants are the
/// reference implementations the parallel ones are tested against.
enum class Exec { Serial, Parallel };

struct SchemeParams {
    int K = 0;                 // users
    int N = 0;                 // files
    Rational cache_ratio;      // M/N, exact
    std::uint64_t F = 0;       // subpacketization level
    int t = 0;                 // per-slot caching multiplicity, K * M/N
    std::uint64_t Z = 0;       // cached slots per user per file, F * M/N
    int h = 1;                 // replication multiplier (MN scheme)
};

/// Builds params from (K, N, cache_ratio, F, h) and checks the integrality
/// of t and Z. Throws std::invalid_argument on violation.
SchemeParams make_scheme_params(int K, int N, const Rational& cache_ratio,
                                std::uint64_t F, int h);

/// Per-user cached slot sets U_1..U_K over [0, F).
struct PlacementProfile {
    std::uint64_t F = 0;
    std::vector<std::vector<std::uint32_t>> user_slots;  // sorted per user

    int user_count() const { return static_cast<int>(user_slots.size()); }
};

struct DemandVector {
    std::vector<int> d;  // d[u] in [0, N)

    int user_count() const { return static_cast<int>(d.size()); }
    /// Number of distinct requested files.
    int distinct_files() const;
};

struct Violation {
    std::string kind;  // "cache_size" or "slot_multiplicity"
    int user = -1;
    std::int64_t slot = -1;
    std::uint64_t expected = 0;
    std::uint64_t got = 0;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    /// One violation per line: `kind user=<i> slot=<j> expected=<x> got=<y>`.
    std::string to_text() const;
};

/// Checks |U_i| = Z for every user and per-slot multiplicity = t.
ValidationReport validate_symmetric(const SchemeParams& params,
                                    const PlacementProfile& placement);

struct IdentityResult {
    Bint lhs;
    Bint rhs;
    bool equal = false;
};

/// Sum of |U_{d_1} u ... u U_{d_k}| over all k-subsets of users, against
/// F * (C(K,k) - C(K-t,k)). Brute force over subsets; refuses K > 20.
IdentityResult union_count_identity(const SchemeParams& params,
                                    const PlacementProfile& placement, int k,
                                    Exec exec = Exec::Parallel);

/// Sum of |U_{d_1} n ... n U_{d_k}| over all k-subsets, against C(t,k) * F.
/// Brute force over subsets; requires k <= t, refuses K > 20.
IdentityResult intersection_count_identity(const SchemeParams& params,
                                           const PlacementProfile& placement, int k,
                                           Exec exec = Exec::Parallel);

/// Same sums computed exactly by interchanging summation: slot j with
/// multiplicity t_j contributes C(K,k) - C(K-t_j,k) to the union sum and
/// C(t_j,k) to the intersection sum. Exact for any K.
IdentityResult union_count_identity_by_slots(const SchemeParams& params,
                                             const PlacementProfile& placement, int k);
IdentityResult intersection_count_identity_by_slots(const SchemeParams& params,
                                                    const PlacementProfile& placement,
                                                    int k);

/// F mod C(K, t) == 0.
bool divisibility_check(const SchemeParams& params);

/// R* = (K-t)/(1+t) - C(K-min(K,N), t+1) / C(K,t), exact.
Rational optimal_rate(const SchemeParams& params);

/// F* = C(K, t).
Bint optimal_subpacketization(const SchemeParams& params);

}  // namespace ccsim
