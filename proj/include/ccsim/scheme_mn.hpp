#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "ccsim/simulator.hpp"

namespace ccsim {

/// Subfile slot label (j, S): replica index j in [0, h), S a t-subset of the
/// users. Slot index = j * C(K,t) + colex rank of S.
struct MnSlot {
    int j = 0;
    KSubset S;
};

std::uint64_t mn_slot_index(const SchemeParams& params, const MnSlot& slot);
MnSlot mn_slot_from_index(const SchemeParams& params, std::uint64_t index);

/// One user per distinct requested file, lowest index first.
struct LeaderSet {
    KSubset users;
    int e = 0;
};

/// F = h*C(K,t), user u caches slot (j,S) iff u in S.
std::pair<SchemeParams, PlacementProfile> mn_placement(int K, int N, int t, int h);

LeaderSet choose_leaders(const DemandVector& demand);

/// One transmission per (j, A), |A| = t+1, A meeting the leader set, ordered
/// j-major then colex(A). Payloads are left for materialization.
std::vector<Transmission> mn_delivery(const SchemeParams& params,
                                      const DemandVector& demand,
                                      const LeaderSet& leaders);

/// Lookup of sent messages by (j, A); rebuilt from the deterministic
/// delivery order rather than parsed from labels.
class MnMessageIndex {
  public:
    MnMessageIndex(const SchemeParams& params, const LeaderSet& leaders,
                   const std::vector<Transmission>& sent);

    /// nullptr when (j, A) was not sent.
    const std::vector<std::uint8_t>* find(int j, const KSubset& A) const;

  private:
    std::map<std::pair<int, std::uint64_t>, const std::vector<std::uint8_t>*> by_key_;
    int K_ = 0;
};

/// Payload of the unsent Y_{j,B} (B a (t+1)-subset disjoint from the leader
/// set): XOR of the sent Y_{j,C\V} over the e-subsets V != U of C = B u U
/// whose users request all e distinct files.
std::vector<std::uint8_t> mn_recover_unsent(const SchemeParams& params, int j,
                                            const KSubset& B, const MnMessageIndex& sent,
                                            const DemandVector& demand,
                                            const LeaderSet& leaders);

/// Reconstructs file d_u for user u as F*L padded bytes.
std::vector<std::uint8_t> mn_decode(const SchemeParams& params, int user,
                                    const UserCache& cache,
                                    const std::vector<Transmission>& sent,
                                    const DemandVector& demand, const LeaderSet& leaders);

class MnScheme : public Scheme {
  public:
    MnScheme(int K, int N, int t, int h);

    std::string name() const override { return "mn"; }
    std::string transcript_header(const DemandVector& demand) const override;
    std::vector<Transmission> deliver(const DemandVector& demand) const override;
    std::vector<std::uint8_t> decode(int user, const DemandVector& demand,
                                     const std::vector<Transmission>& sent,
                                     const UserCache& cache) const override;
};

}  // namespace ccsim
