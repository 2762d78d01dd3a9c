#include "ccsim/scheme_grouping.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ccsim {
namespace {

std::string subset_label(const KSubset& s) {
    if (s.elements.empty()) return "-";
    std::ostringstream os;
    for (size_t i = 0; i < s.elements.size(); ++i) {
        if (i) os << ",";
        os << s.elements[i] + 1;
    }
    return os.str();
}

void check_feasible(int n, int a, int b) {
    if (n < 1 || a < 0 || b < 0 || a + b > n)
        throw std::invalid_argument("grouping: requires a >= 0, b >= 0, a + b <= n");
}

KSubset pick_from(const KSubset& ground, const KSubset& positions) {
    KSubset out;
    out.elements.reserve(positions.elements.size());
    for (int idx : positions.elements)
        out.elements.push_back(ground.elements[static_cast<size_t>(idx)]);
    return out;
}

}  // namespace

std::uint64_t GroupingParams::user_count() const { return binomial_u64(n, a); }
std::uint64_t GroupingParams::slot_count() const { return binomial_u64(n, b); }

std::pair<SchemeParams, PlacementProfile> grouping_placement(int n, int a, int b, int N) {
    check_feasible(n, a, b);
    const std::uint64_t K = binomial_u64(n, a);
    const std::uint64_t F = binomial_u64(n, b);
    Bint num = binomial(n, b) - binomial(n - a, b);
    Bint den = binomial(n, b);
    Rational ratio(num, den);
    ratio.canonicalize();
    SchemeParams params = make_scheme_params(static_cast<int>(K), N, ratio, F, 1);

    PlacementProfile placement;
    placement.F = F;
    placement.user_slots.resize(static_cast<size_t>(K));
    for (std::uint64_t ur = 0; ur < K; ++ur) {
        KSubset A = ksubset_unrank(ur, n, a);
        auto& slots = placement.user_slots[static_cast<size_t>(ur)];
        for (std::uint64_t br = 0; br < F; ++br) {
            KSubset B = ksubset_unrank(br, n, b);
            if (A.intersects(B)) slots.push_back(static_cast<std::uint32_t>(br));
        }
    }
    return {params, placement};
}

std::vector<Transmission> grouping_delivery(const GroupingParams& gp,
                                            const DemandVector& demand) {
    check_feasible(gp.n, gp.a, gp.b);
    const int n = gp.n;
    const int a = gp.a;
    const int b = gp.b;
    std::vector<Transmission> out;
    const std::uint64_t total = binomial_u64(n, a + b);
    const std::uint64_t picks = binomial_u64(a + b, a);
    out.reserve(static_cast<size_t>(total));
    for (std::uint64_t cr = 0; cr < total; ++cr) {
        KSubset C = ksubset_unrank(cr, n, a + b);
        Transmission tx;
        tx.label = "Y C=" + subset_label(C);
        for (std::uint64_t pr = 0; pr < picks; ++pr) {
            KSubset Aprime = pick_from(C, ksubset_unrank(pr, a + b, a));
            KSubset slot;
            std::set_difference(C.elements.begin(), C.elements.end(),
                                Aprime.elements.begin(), Aprime.elements.end(),
                                std::back_inserter(slot.elements));
            int file = demand.d[static_cast<size_t>(ksubset_rank(Aprime, n))];
            tx.terms.push_back({file, ksubset_rank(slot, n)});
        }
        out.push_back(std::move(tx));
    }
    return out;
}

std::vector<std::uint8_t> grouping_decode(const GroupingParams& gp, int user,
                                          const UserCache& cache,
                                          const std::vector<Transmission>& sent,
                                          const DemandVector& demand) {
    const int n = gp.n;
    const int a = gp.a;
    const int b = gp.b;
    const std::uint64_t F = binomial_u64(n, b);
    const std::uint64_t L = cache.block_bytes();
    const KSubset A = ksubset_unrank(static_cast<std::uint64_t>(user), n, a);
    const int wanted = demand.d[static_cast<size_t>(user)];
    std::vector<std::uint8_t> out(F * L, 0);

    const std::uint64_t picks = binomial_u64(a + b, a);
    for (std::uint64_t br = 0; br < F; ++br) {
        if (cache.has_slot(br)) {
            const auto& block = cache.block(wanted, br);
            std::copy(block.begin(), block.end(), out.begin() + static_cast<long>(br * L));
            continue;
        }
        KSubset B = ksubset_unrank(br, n, b);
        KSubset C = A.unite(B);
        std::vector<std::uint8_t> block = sent[ksubset_rank(C, n)].payload;
        // cancel every term except W_{d_A, B}; all of them are cached since
        // their slot C \ A' meets A
        for (std::uint64_t pr = 0; pr < picks; ++pr) {
            KSubset Aprime = pick_from(C, ksubset_unrank(pr, a + b, a));
            if (Aprime == A) continue;
            KSubset slot;
            std::set_difference(C.elements.begin(), C.elements.end(),
                                Aprime.elements.begin(), Aprime.elements.end(),
                                std::back_inserter(slot.elements));
            int file = demand.d[static_cast<size_t>(ksubset_rank(Aprime, n))];
            xor_into(block, cache.block(file, ksubset_rank(slot, n)));
        }
        std::copy(block.begin(), block.end(), out.begin() + static_cast<long>(br * L));
    }
    return out;
}

RateComparison grouping_rate_vs_optimal(int n, int a, int b) {
    check_feasible(n, a, b);
    RateComparison rc;
    Bint r_num = binomial(n, a + b);
    Bint r_den = binomial(n, b);
    rc.R = Rational(r_num, r_den);
    rc.R.canonicalize();
    Bint t = binomial(n, a) - binomial(n - b, a);
    Bint r0_num = binomial(n - b, a);
    Bint r0_den = 1 + t;
    rc.R0 = Rational(r0_num, r0_den);
    rc.R0.canonicalize();

    // optimal rate with N = K (the construction leaves N free)
    const int K = static_cast<int>(binomial_u64(n, a));
    Bint ratio_num = binomial(n, b) - binomial(n - a, b);
    Rational ratio(ratio_num, r_den);
    ratio.canonicalize();
    rc.Rstar = optimal_rate(make_scheme_params(K, K, ratio, binomial_u64(n, b), 1));

    rc.ratio_R_over_R0 = rc.R / rc.R0;
    rc.ratio_R_over_R0.canonicalize();
    Bint closed_num = t + 1;
    Bint closed_den = binomial(a + b, a);
    Rational closed(closed_num, closed_den);
    closed.canonicalize();
    if (closed != rc.ratio_R_over_R0)
        throw std::logic_error("grouping rate ratio: closed form disagrees with direct ratio");
    if (rc.R < rc.Rstar)
        throw std::logic_error("grouping rate: R < R*");
    return rc;
}

bool verify_lower1(int n, int a, int b) {
    check_feasible(n, a, b);
    return binomial(a + b, a) + binomial(n - b, a) <= binomial(n, a) + 1;
}

GroupingScheme::GroupingScheme(int n, int a, int b, int N) : gp_{n, a, b} {
    auto [params, placement] = grouping_placement(n, a, b, N);
    params_ = params;
    placement_ = std::move(placement);
}

std::string GroupingScheme::transcript_header(const DemandVector& demand) const {
    (void)demand;
    std::ostringstream os;
    os << "scheme=grouping n=" << gp_.n << " a=" << gp_.a << " b=" << gp_.b
       << " N=" << params_.N;
    return os.str();
}

std::vector<Transmission> GroupingScheme::deliver(const DemandVector& demand) const {
    return grouping_delivery(gp_, demand);
}

std::vector<std::uint8_t> GroupingScheme::decode(int user, const DemandVector& demand,
                                                 const std::vector<Transmission>& sent,
                                                 const UserCache& cache) const {
    return grouping_decode(gp_, user, cache, sent, demand);
}

}  // namespace ccsim
