#include "ccsim/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ccsim {

bool KSubset::contains(int x) const {
    return std::binary_search(elements.begin(), elements.end(), x);
}

bool KSubset::intersects(const KSubset& other) const {
    auto a = elements.begin();
    auto b = other.elements.begin();
    while (a != elements.end() && b != other.elements.end()) {
        if (*a == *b) return true;
        if (*a < *b) ++a; else ++b;
    }
    return false;
}

KSubset KSubset::unite(const KSubset& other) const {
    KSubset out;
    std::set_union(elements.begin(), elements.end(),
                   other.elements.begin(), other.elements.end(),
                   std::back_inserter(out.elements));
    return out;
}

KSubset KSubset::without(int x) const {
    KSubset out;
    out.elements.reserve(elements.size());
    for (int e : elements)
        if (e != x) out.elements.push_back(e);
    return out;
}

KSubset KSubset::with(int x) const {
    KSubset out = *this;
    out.elements.insert(std::lower_bound(out.elements.begin(), out.elements.end(), x), x);
    return out;
}

Bint binomial(long n, long k) {
    if (k < 0 || k > n || n < 0) return 0;
    Bint out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

std::uint64_t binomial_u64(long n, long k) {
    Bint b = binomial(n, k);
    if (b == 0) return 0;
    if (mpz_sizeinbase(b.get_mpz_t(), 2) > 64)
        throw std::overflow_error("binomial_u64: C(n,k) exceeds 64 bits");
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, b.get_mpz_t());
    return out;
}

double log_binomial(long n, long k) {
    if (k < 0 || k > n) throw std::domain_error("log_binomial: requires 0 <= k <= n");
    return std::lgamma(static_cast<double>(n) + 1.0)
         - std::lgamma(static_cast<double>(k) + 1.0)
         - std::lgamma(static_cast<double>(n - k) + 1.0);
}

std::uint64_t ksubset_rank(const KSubset& s, int n) {
    std::uint64_t r = 0;
    for (int i = 0; i < s.size(); ++i)
        r += binomial_u64(s.elements[static_cast<size_t>(i)], i + 1);
    (void)n;
    return r;
}

KSubset ksubset_unrank(std::uint64_t r, int n, int k) {
    if (r >= binomial_u64(n, k))
        throw std::out_of_range("ksubset_unrank: rank >= C(n,k)");
    KSubset s;
    s.elements.resize(static_cast<size_t>(k));
    int hi = n;
    for (int i = k; i >= 1; --i) {
        // largest m with C(m, i) <= r
        int m = i - 1;
        std::uint64_t c = 0;  // C(m, i) for m = i-1
        while (m + 1 < hi) {
            // C(m+1, i) = C(m, i) * (m+1) / (m+1-i)
            std::uint64_t next = (m + 1 == i) ? 1 : c * static_cast<std::uint64_t>(m + 1)
                                                     / static_cast<std::uint64_t>(m + 1 - i);
            if (next > r) break;
            c = next;
            ++m;
        }
        s.elements[static_cast<size_t>(i - 1)] = m;
        r -= c;
        hi = m;
    }
    return s;
}

std::vector<KSubset> enumerate_ksubsets(int n, int k) {
    if (k > n) throw std::domain_error("enumerate_ksubsets: k > n");
    std::vector<KSubset> out;
    std::uint64_t total = binomial_u64(n, k);
    out.reserve(static_cast<size_t>(total));
    KSubset cur;
    cur.elements.resize(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) cur.elements[static_cast<size_t>(i)] = i;
    for (std::uint64_t r = 0; r < total; ++r) {
        out.push_back(cur);
        // colex successor: bump the lowest element that can move without
        // colliding, reset everything below it
        int i = 0;
        while (i + 1 < k && cur.elements[static_cast<size_t>(i)] + 1
                                == cur.elements[static_cast<size_t>(i + 1)])
            ++i;
        if (i < k) {
            ++cur.elements[static_cast<size_t>(i)];
            for (int j = 0; j < i; ++j) cur.elements[static_cast<size_t>(j)] = j;
        }
    }
    return out;
}

}  // namespace ccsim
