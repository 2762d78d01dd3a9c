#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ccsim/simulator.hpp"

namespace ccsim {

/// Ground-set construction: users are a-subsets of [0, n), slots are
/// b-subsets, user A caches slot B iff A and B intersect.
struct GroupingParams {
    int n = 0;
    int a = 0;
    int b = 0;

    std::uint64_t user_count() const;  // C(n, a)
    std::uint64_t slot_count() const;  // C(n, b)
};

std::pair<SchemeParams, PlacementProfile> grouping_placement(int n, int a, int b, int N);

/// One transmission per (a+b)-subset C of [0, n) in colex order; payload
/// terms are the subfiles (d_{A'}, C \ A') over all a-subsets A' of C.
std::vector<Transmission> grouping_delivery(const GroupingParams& gp,
                                            const DemandVector& demand);

std::vector<std::uint8_t> grouping_decode(const GroupingParams& gp, int user,
                                          const UserCache& cache,
                                          const std::vector<Transmission>& sent,
                                          const DemandVector& demand);

struct RateComparison {
    Rational R;              // C(n,a+b) / C(n,b)
    Rational R0;             // C(n-b,a) / (1 + C(n,a) - C(n-b,a))
    Rational Rstar;          // optimal rate at N = K
    Rational ratio_R_over_R0;
};

/// Computes R/R0 both directly and via the closed form
/// (C(n,a) - C(n-b,a) + 1) / C(a+b,a); throws std::logic_error on mismatch.
RateComparison grouping_rate_vs_optimal(int n, int a, int b);

/// C(a+b,a) + C(n-b,a) <= C(n,a) + 1.
bool verify_lower1(int n, int a, int b);

class GroupingScheme : public Scheme {
  public:
    GroupingScheme(int n, int a, int b, int N);

    const GroupingParams& grouping_params() const { return gp_; }

    std::string name() const override { return "grouping"; }
    std::string transcript_header(const DemandVector& demand) const override;
    std::vector<Transmission> deliver(const DemandVector& demand) const override;
    std::vector<std::uint8_t> decode(int user, const DemandVector& demand,
                                     const std::vector<Transmission>& sent,
                                     const UserCache& cache) const override;

  private:
    GroupingParams gp_;
};

}  // namespace ccsim
