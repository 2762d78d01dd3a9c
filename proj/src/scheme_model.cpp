#include "ccsim/scheme_model.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ccsim {
namespace {

constexpr int kIdentityBruteForceMaxK = 20;

Rational rational_from_bints(const Bint& num, const Bint& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::vector<std::uint32_t> slot_multiplicities(const PlacementProfile& placement) {
    std::vector<std::uint32_t> mult(placement.F, 0);
    for (const auto& slots : placement.user_slots)
        for (std::uint32_t j : slots) ++mult[j];
    return mult;
}

// Union (or intersection) size of the user slot sets picked by `subset`,
// via per-slot membership bitmasks.
std::uint64_t combine_size(const std::vector<std::vector<std::uint8_t>>& member,
                           const KSubset& subset, bool intersect) {
    const std::uint64_t F = member.empty() ? 0 : member[0].size();
    std::uint64_t count = 0;
    for (std::uint64_t j = 0; j < F; ++j) {
        bool acc = intersect;
        for (int u : subset.elements) {
            bool has = member[static_cast<size_t>(u)][j] != 0;
            acc = intersect ? (acc && has) : (acc || has);
            if (acc != intersect) break;
        }
        count += acc ? 1 : 0;
    }
    return count;
}

IdentityResult subset_sum_identity(const SchemeParams& params,
                                   const PlacementProfile& placement, int k,
                                   bool intersect, Exec exec) {
    const int K = params.K;
    if (K > kIdentityBruteForceMaxK)
        throw std::domain_error("identity check: brute force limited to K <= 20");
    if (k < 1 || k > K)
        throw std::domain_error("identity check: k out of range");
    if (intersect && k > params.t)
        throw std::domain_error("intersection identity: requires k <= t");

    // dense per-user membership over slots
    std::vector<std::vector<std::uint8_t>> member(
        static_cast<size_t>(K), std::vector<std::uint8_t>(placement.F, 0));
    for (int u = 0; u < K; ++u)
        for (std::uint32_t j : placement.user_slots[static_cast<size_t>(u)])
            member[static_cast<size_t>(u)][j] = 1;

    const std::uint64_t total = binomial_u64(K, k);
    std::uint64_t lhs = 0;
    if (exec == Exec::Parallel) {
#pragma omp parallel for reduction(+ : lhs) schedule(static)
        for (std::int64_t r = 0; r < static_cast<std::int64_t>(total); ++r)
            lhs += combine_size(member, ksubset_unrank(static_cast<std::uint64_t>(r), K, k),
                                intersect);
    } else {
        for (std::uint64_t r = 0; r < total; ++r)
            lhs += combine_size(member, ksubset_unrank(r, K, k), intersect);
    }

    IdentityResult out;
    out.lhs = Bint(static_cast<unsigned long>(lhs));
    const Bint F(static_cast<unsigned long>(placement.F));
    if (intersect)
        out.rhs = binomial(params.t, k) * F;
    else
        out.rhs = F * (binomial(K, k) - binomial(K - params.t, k));
    out.equal = (out.lhs == out.rhs);
    return out;
}

}  // namespace

int DemandVector::distinct_files() const {
    std::set<int> files(d.begin(), d.end());
    return static_cast<int>(files.size());
}

SchemeParams make_scheme_params(int K, int N, const Rational& cache_ratio,
                                std::uint64_t F, int h) {
    if (K < 1 || N < 1 || F < 1 || h < 1)
        throw std::invalid_argument("scheme params: K, N, F, h must be positive");
    if (cache_ratio < 0 || cache_ratio > 1)
        throw std::invalid_argument("scheme params: cache ratio must lie in [0,1]");
    Rational tq = cache_ratio * K;
    if (tq.get_den() != 1)
        throw std::invalid_argument("scheme params: t = K*M/N not integral");
    Rational zq = cache_ratio * Bint(static_cast<unsigned long>(F));
    if (zq.get_den() != 1)
        throw std::invalid_argument("scheme params: Z = F*M/N not integral");
    SchemeParams p;
    p.K = K;
    p.N = N;
    p.cache_ratio = cache_ratio;
    p.F = F;
    p.t = static_cast<int>(tq.get_num().get_si());
    p.Z = static_cast<std::uint64_t>(zq.get_num().get_ui());
    p.h = h;
    return p;
}

std::string ValidationReport::to_text() const {
    std::ostringstream os;
    for (const auto& v : violations)
        os << v.kind << " user=" << v.user << " slot=" << v.slot
           << " expected=" << v.expected << " got=" << v.got << "\n";
    return os.str();
}

ValidationReport validate_symmetric(const SchemeParams& params,
                                    const PlacementProfile& placement) {
    ValidationReport report;
    for (int u = 0; u < placement.user_count(); ++u) {
        const auto& slots = placement.user_slots[static_cast<size_t>(u)];
        if (slots.size() != params.Z)
            report.violations.push_back({"cache_size", u, -1, params.Z, slots.size()});
    }
    auto mult = slot_multiplicities(placement);
    for (std::uint64_t j = 0; j < placement.F; ++j) {
        if (mult[j] != static_cast<std::uint32_t>(params.t))
            report.violations.push_back({"slot_multiplicity", -1,
                                         static_cast<std::int64_t>(j),
                                         static_cast<std::uint64_t>(params.t), mult[j]});
    }
    return report;
}

IdentityResult union_count_identity(const SchemeParams& params,
                                    const PlacementProfile& placement, int k, Exec exec) {
    return subset_sum_identity(params, placement, k, /*intersect=*/false, exec);
}

IdentityResult intersection_count_identity(const SchemeParams& params,
                                           const PlacementProfile& placement, int k,
                                           Exec exec) {
    return subset_sum_identity(params, placement, k, /*intersect=*/true, exec);
}

IdentityResult union_count_identity_by_slots(const SchemeParams& params,
                                             const PlacementProfile& placement, int k) {
    if (k < 1 || k > params.K)
        throw std::domain_error("identity check: k out of range");
    IdentityResult out;
    Bint ckk = binomial(params.K, k);
    for (std::uint32_t tj : slot_multiplicities(placement))
        out.lhs += ckk - binomial(params.K - static_cast<long>(tj), k);
    out.rhs = Bint(static_cast<unsigned long>(placement.F))
              * (ckk - binomial(params.K - params.t, k));
    out.equal = (out.lhs == out.rhs);
    return out;
}

IdentityResult intersection_count_identity_by_slots(const SchemeParams& params,
                                                    const PlacementProfile& placement,
                                                    int k) {
    if (k < 1 || k > params.t)
        throw std::domain_error("intersection identity: requires 1 <= k <= t");
    IdentityResult out;
    for (std::uint32_t tj : slot_multiplicities(placement))
        out.lhs += binomial(static_cast<long>(tj), k);
    out.rhs = binomial(params.t, k) * Bint(static_cast<unsigned long>(placement.F));
    out.equal = (out.lhs == out.rhs);
    return out;
}

bool divisibility_check(const SchemeParams& params) {
    Bint fstar = binomial(params.K, params.t);
    return Bint(static_cast<unsigned long>(params.F)) % fstar == 0;
}

Rational optimal_rate(const SchemeParams& params) {
    const int K = params.K;
    const int t = params.t;
    Rational first = rational_from_bints(Bint(K - t), Bint(1 + t));
    Rational second = rational_from_bints(binomial(K - std::min(K, params.N), t + 1),
                                          binomial(K, t));
    return first - second;
}

Bint optimal_subpacketization(const SchemeParams& params) {
    return binomial(params.K, params.t);
}

}  // namespace ccsim
