#include "doctest.h"

#include <cmath>
#include <set>
#include <stdexcept>

#include "ccsim/combinatorics.hpp"

using namespace ccsim;

namespace {

// natural log of a big integer via mantissa/exponent split; accurate to
// ~1e-16 relative, independent of log_binomial's lgamma path
double ln_exact(const Bint& v) {
    signed long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

}  // namespace

TEST_CASE("binomial small values") {
    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(7, 0) == 1);
    CHECK(binomial(30, 15) == 155117520);
    CHECK(binomial(3, 5) == 0);  // k > n
}

TEST_CASE("binomial satisfies Pascal's identity for n <= 30") {
    for (long n = 1; n <= 30; ++n)
        for (long k = 0; k <= n; ++k)
            CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
}

TEST_CASE("binomial_u64 overflow guard") {
    CHECK(binomial_u64(20, 10) == 184756);
    CHECK_THROWS_AS(binomial_u64(1000, 500), std::overflow_error);
}

TEST_CASE("log_binomial matches exact values") {
    CHECK(log_binomial(4, 2) == doctest::Approx(std::log(6.0)).epsilon(1e-12));
    CHECK(log_binomial(17, 17) == 0.0);
    CHECK(log_binomial(1000, 500) ==
          doctest::Approx(ln_exact(binomial(1000, 500))).epsilon(1e-9));
    CHECK_THROWS_AS(log_binomial(2, 3), std::domain_error);
}

TEST_CASE("log_binomial relative error below 1e-9 up to n = 200") {
    for (long n = 1; n <= 200; n += 7) {
        for (long k = 0; k <= n; k += 3) {
            Bint exact = binomial(n, k);
            // |delta ln| < 1e-9 means exp(result) is within 1e-9 relative
            CHECK(std::abs(log_binomial(n, k) - ln_exact(exact)) < 1e-9);
        }
    }
}

TEST_CASE("colex rank and unrank") {
    CHECK(ksubset_rank(KSubset{{0, 1}}, 4) == 0);
    CHECK(ksubset_unrank(5, 4, 2) == KSubset{{2, 3}});
    CHECK_THROWS_AS(ksubset_unrank(6, 4, 2), std::out_of_range);

    for (std::uint64_t r = 0; r < binomial_u64(6, 2); ++r) {
        KSubset s = ksubset_unrank(r, 6, 2);
        CHECK(ksubset_rank(s, 6) == r);
    }
}

TEST_CASE("enumerate_ksubsets colex order") {
    auto subsets = enumerate_ksubsets(3, 2);
    REQUIRE(subsets.size() == 3);
    CHECK(subsets[0] == KSubset{{0, 1}});
    CHECK(subsets[1] == KSubset{{0, 2}});
    CHECK(subsets[2] == KSubset{{1, 2}});

    auto empty = enumerate_ksubsets(5, 0);
    REQUIRE(empty.size() == 1);
    CHECK(empty[0].elements.empty());
}

TEST_CASE("enumerate_ksubsets count, uniqueness, unrank agreement") {
    auto subsets = enumerate_ksubsets(6, 3);
    REQUIRE(subsets.size() == 20);
    std::set<std::vector<int>> seen;
    for (std::uint64_t r = 0; r < subsets.size(); ++r) {
        CHECK(subsets[r].size() == 3);
        CHECK(seen.insert(subsets[r].elements).second);
        CHECK(subsets[r] == ksubset_unrank(r, 6, 3));
        for (int e : subsets[r].elements) {
            CHECK(e >= 0);
            CHECK(e < 6);
        }
    }
}

TEST_CASE("KSubset set operations") {
    KSubset a{{0, 2, 4}};
    KSubset b{{1, 2}};
    CHECK(a.intersects(b));
    CHECK(!a.intersects(KSubset{{1, 3}}));
    CHECK(a.unite(b) == KSubset{{0, 1, 2, 4}});
    CHECK(a.without(2) == KSubset{{0, 4}});
    CHECK(b.with(0) == KSubset{{0, 1, 2}});
    CHECK(a.contains(4));
    CHECK(!a.contains(3));
}
