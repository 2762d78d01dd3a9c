#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace ccsim {

using Bint = mpz_class;
using Rational = mpq_class;

/// A k-subset of the ground set [0, n), kept strictly increasing.
struct KSubset {
    std::vector<int> elements;

    int size() const { return static_cast<int>(elements.size()); }
    bool contains(int x) const;
    bool intersects(const KSubset& other) const;

    /// Set union / difference of sorted element lists.
    KSubset unite(const KSubset& other) const;
    KSubset without(int x) const;
    KSubset with(int x) const;

    bool operator==(const KSubset& other) const = default;
};

/// C(n, k) exactly; 0 when k > n or k < 0.
Bint binomial(long n, long k);

/// C(n, k) as uint64_t. Throws std::overflow_error if the value does not fit.
std::uint64_t binomial_u64(long n, long k);

/// ln C(n, k) via log-gamma. Throws std::domain_error when k > n or k < 0.
double log_binomial(long n, long k);

/// Colexicographic rank of s among k-subsets of [0, n), in [0, C(n,k)).
std::uint64_t ksubset_rank(const KSubset& s, int n);

/// Inverse of ksubset_rank. Throws std::out_of_range when r >= C(n,k).
KSubset ksubset_unrank(std::uint64_t r, int n, int k);

/// All C(n,k) subsets in colex order (matches ksubset_unrank(0..)).
std::vector<KSubset> enumerate_ksubsets(int n, int k);

}  // namespace ccsim
