#include "ccsim/scheme_mn.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ccsim {
namespace {

std::string subset_label(const KSubset& s) {
    if (s.elements.empty()) return "-";
    std::ostringstream os;
    for (size_t i = 0; i < s.elements.size(); ++i) {
        if (i) os << ",";
        os << s.elements[i] + 1;  // 1-based in external output
    }
    return os.str();
}

std::string demand_label(const DemandVector& demand) {
    std::ostringstream os;
    for (size_t i = 0; i < demand.d.size(); ++i) {
        if (i) os << ",";
        os << demand.d[i];
    }
    return os.str();
}

}  // namespace

std::uint64_t mn_slot_index(const SchemeParams& params, const MnSlot& slot) {
    std::uint64_t per_replica = binomial_u64(params.K, params.t);
    return static_cast<std::uint64_t>(slot.j) * per_replica + ksubset_rank(slot.S, params.K);
}

MnSlot mn_slot_from_index(const SchemeParams& params, std::uint64_t index) {
    std::uint64_t per_replica = binomial_u64(params.K, params.t);
    MnSlot slot;
    slot.j = static_cast<int>(index / per_replica);
    slot.S = ksubset_unrank(index % per_replica, params.K, params.t);
    return slot;
}

std::pair<SchemeParams, PlacementProfile> mn_placement(int K, int N, int t, int h) {
    if (t < 0 || t > K)
        throw std::invalid_argument("mn_placement: requires 0 <= t <= K");
    if (h < 1) throw std::invalid_argument("mn_placement: requires h >= 1");
    std::uint64_t per_replica = binomial_u64(K, t);
    std::uint64_t F = static_cast<std::uint64_t>(h) * per_replica;
    Rational ratio(t, K);
    ratio.canonicalize();
    SchemeParams params = make_scheme_params(K, N, ratio, F, h);

    PlacementProfile placement;
    placement.F = F;
    placement.user_slots.resize(static_cast<size_t>(K));
    for (std::uint64_t r = 0; r < per_replica; ++r) {
        KSubset S = ksubset_unrank(r, K, t);
        for (int u : S.elements)
            for (int j = 0; j < h; ++j)
                placement.user_slots[static_cast<size_t>(u)].push_back(
                    static_cast<std::uint32_t>(static_cast<std::uint64_t>(j) * per_replica + r));
    }
    for (auto& slots : placement.user_slots) std::sort(slots.begin(), slots.end());
    return {params, placement};
}

LeaderSet choose_leaders(const DemandVector& demand) {
    LeaderSet leaders;
    std::set<int> seen;
    for (int u = 0; u < demand.user_count(); ++u) {
        if (seen.insert(demand.d[static_cast<size_t>(u)]).second)
            leaders.users.elements.push_back(u);
    }
    leaders.e = leaders.users.size();
    return leaders;
}

std::vector<Transmission> mn_delivery(const SchemeParams& params,
                                      const DemandVector& demand,
                                      const LeaderSet& leaders) {
    const int K = params.K;
    const int t = params.t;
    std::vector<Transmission> out;
    if (t + 1 > K) return out;  // t = K: nothing to send
    std::uint64_t total = binomial_u64(K, t + 1);
    for (int j = 0; j < params.h; ++j) {
        for (std::uint64_t r = 0; r < total; ++r) {
            KSubset A = ksubset_unrank(r, K, t + 1);
            if (!A.intersects(leaders.users)) continue;
            Transmission tx;
            tx.label = "Y j=" + std::to_string(j) + " A=" + subset_label(A);
            for (int i : A.elements) {
                MnSlot slot{j, A.without(i)};
                tx.terms.push_back({demand.d[static_cast<size_t>(i)],
                                    mn_slot_index(params, slot)});
            }
            out.push_back(std::move(tx));
        }
    }
    return out;
}

MnMessageIndex::MnMessageIndex(const SchemeParams& params, const LeaderSet& leaders,
                               const std::vector<Transmission>& sent)
    : K_(params.K) {
    if (params.t + 1 > params.K) return;
    std::uint64_t total = binomial_u64(params.K, params.t + 1);
    size_t idx = 0;
    for (int j = 0; j < params.h; ++j) {
        for (std::uint64_t r = 0; r < total; ++r) {
            KSubset A = ksubset_unrank(r, params.K, params.t + 1);
            if (!A.intersects(leaders.users)) continue;
            if (idx >= sent.size())
                throw std::logic_error("mn message index: transmission list too short");
            by_key_[{j, r}] = &sent[idx].payload;
            ++idx;
        }
    }
    if (idx != sent.size())
        throw std::logic_error("mn message index: transmission list length mismatch");
}

const std::vector<std::uint8_t>* MnMessageIndex::find(int j, const KSubset& A) const {
    auto it = by_key_.find({j, ksubset_rank(A, K_)});
    return it == by_key_.end() ? nullptr : it->second;
}

std::vector<std::uint8_t> mn_recover_unsent(const SchemeParams& params, int j,
                                            const KSubset& B, const MnMessageIndex& sent,
                                            const DemandVector& demand,
                                            const LeaderSet& leaders) {
    if (B.intersects(leaders.users))
        throw std::invalid_argument("mn_recover_unsent: B must avoid the leader set");
    const KSubset C = B.unite(leaders.users);
    const int e = leaders.e;

    std::vector<std::uint8_t> acc;
    std::uint64_t total = binomial_u64(C.size(), e);
    for (std::uint64_t r = 0; r < total; ++r) {
        KSubset pick = ksubset_unrank(r, C.size(), e);
        KSubset V;
        for (int idx : pick.elements)
            V.elements.push_back(C.elements[static_cast<size_t>(idx)]);
        std::set<int> files;
        for (int u : V.elements) files.insert(demand.d[static_cast<size_t>(u)]);
        if (static_cast<int>(files.size()) != e) continue;  // not in V-family
        if (V == leaders.users) continue;

        KSubset rest;  // C \ V
        std::set_difference(C.elements.begin(), C.elements.end(),
                            V.elements.begin(), V.elements.end(),
                            std::back_inserter(rest.elements));
        const auto* payload = sent.find(j, rest);
        if (payload == nullptr)
            throw std::logic_error("mn_recover_unsent: required sent message missing");
        if (acc.empty()) acc.assign(payload->size(), 0);
        xor_into(acc, *payload);
    }
    if (acc.empty())
        throw std::logic_error("mn_recover_unsent: empty recovery family");
    return acc;
}

std::vector<std::uint8_t> mn_decode(const SchemeParams& params, int user,
                                    const UserCache& cache,
                                    const std::vector<Transmission>& sent,
                                    const DemandVector& demand,
                                    const LeaderSet& leaders) {
    const std::uint64_t L = cache.block_bytes();
    const int wanted = demand.d[static_cast<size_t>(user)];
    std::vector<std::uint8_t> out(params.F * L, 0);

    MnMessageIndex index(params, leaders, sent);
    std::map<std::pair<int, std::uint64_t>, std::vector<std::uint8_t>> recovered;

    for (std::uint64_t slot = 0; slot < params.F; ++slot) {
        if (cache.has_slot(slot)) {
            const auto& block = cache.block(wanted, slot);
            std::copy(block.begin(), block.end(), out.begin() + static_cast<long>(slot * L));
            continue;
        }
        MnSlot ms = mn_slot_from_index(params, slot);
        KSubset B = ms.S.with(user);
        const std::vector<std::uint8_t>* y = index.find(ms.j, B);
        if (y == nullptr) {
            auto key = std::make_pair(ms.j, ksubset_rank(B, params.K));
            auto it = recovered.find(key);
            if (it == recovered.end())
                it = recovered
                         .emplace(key, mn_recover_unsent(params, ms.j, B, index, demand,
                                                         leaders))
                         .first;
            y = &it->second;
        }
        // strip the cached terms: Y_{j,B} = sum over i in B of W_{d_i,j,B\{i}}
        std::vector<std::uint8_t> block = *y;
        for (int i : B.elements) {
            if (i == user) continue;
            MnSlot other{ms.j, B.without(i)};
            xor_into(block, cache.block(demand.d[static_cast<size_t>(i)],
                                        mn_slot_index(params, other)));
        }
        std::copy(block.begin(), block.end(), out.begin() + static_cast<long>(slot * L));
    }
    return out;
}

MnScheme::MnScheme(int K, int N, int t, int h) {
    auto [params, placement] = mn_placement(K, N, t, h);
    params_ = params;
    placement_ = std::move(placement);
}

std::string MnScheme::transcript_header(const DemandVector& demand) const {
    std::ostringstream os;
    os << "scheme=mn K=" << params_.K << " N=" << params_.N << " t=" << params_.t
       << " h=" << params_.h << " demand=" << demand_label(demand);
    return os.str();
}

std::vector<Transmission> MnScheme::deliver(const DemandVector& demand) const {
    return mn_delivery(params_, demand, choose_leaders(demand));
}

std::vector<std::uint8_t> MnScheme::decode(int user, const DemandVector& demand,
                                           const std::vector<Transmission>& sent,
                                           const UserCache& cache) const {
    return mn_decode(params_, user, cache, sent, demand, choose_leaders(demand));
}

}  // namespace ccsim
