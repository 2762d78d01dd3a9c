#include "ccsim/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace ccsim {
namespace {

constexpr double kMonotoneSlack = 1e-12;
constexpr double kGuardrailInner = 10000;  // largest allowed n - b for the exact inner binomial

// ln C(K, m) where only ln K is representable. For K beyond double range the
// factors K-i collapse to K at double precision, so the product term is
// m * ln K exactly to machine precision.
double log_outer_binomial(double log_K, double m) {
    if (m == 0.0) return 0.0;
    if (log_K < 700.0) {
        double K = std::exp(log_K);
        return std::lgamma(K + 1.0) - std::lgamma(m + 1.0) - std::lgamma(K - m + 1.0);
    }
    return m * log_K - std::lgamma(m + 1.0);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

AsymptoticParams params_from_epsilon(double epsilon, long n) {
    if (epsilon <= 0.0) throw std::domain_error("params_from_epsilon: epsilon must be > 0");
    if (n < 2) throw std::domain_error("params_from_epsilon: n must be >= 2");
    AsymptoticParams p;
    p.epsilon = epsilon;
    p.n = n;
    p.c = static_cast<int>(std::ceil(1.0 + 1.0 / epsilon));
    p.a = static_cast<long>(std::ceil(std::pow(std::log(static_cast<double>(n)), p.c)));
    p.b = n - p.a - p.c;
    return p;
}

AnalysisRow evaluate_row(const AsymptoticParams& p) {
    if (!p.feasible()) throw std::invalid_argument("evaluate_row: infeasible params (b < 0)");
    AnalysisRow row;
    row.n = p.n;
    row.a = p.a;
    row.b = p.b;
    row.c = p.c;
    row.log_K = log_binomial(p.n, p.a);
    row.log_F = log_binomial(p.n, p.b);

    if (p.n - p.b > kGuardrailInner)
        throw std::overflow_error("evaluate_row: inner binomial guardrail breached");
    Bint inner = binomial(p.n - p.b, p.a);
    double inner_d = inner.get_d();
    row.degenerate = (inner == 0) || (row.log_F < row.log_K);

    row.log_Fstar = (inner == 0) ? 0.0 : log_outer_binomial(row.log_K, inner_d);

    // closed-form R/R0 = (C(n,a) - C(n-b,a) + 1) / C(a+b,a), log domain
    double log_num = (row.log_K < 700.0)
                         ? std::log(std::exp(row.log_K) - inner_d + 1.0)
                         : row.log_K;
    row.ratio = std::exp(log_num - log_binomial(p.a + p.b, p.a));
    if (p.n <= 40 && inner > 0) {
        // exact R/R0 by the direct route, independent of the closed form above
        Bint t = binomial(p.n, p.a) - inner;
        Bint num = binomial(p.n, p.a + p.b) * (t + 1);
        Bint den = binomial(p.n, p.b) * inner;
        Rational exact(num, den);
        exact.canonicalize();
        row.ratio_exact = exact;
    }

    row.claim2_exponent = row.log_F / row.log_K;
    double denom = std::pow(row.log_F, static_cast<double>(p.c));
    row.claim3_statistic = (denom > 0.0) ? row.log_Fstar / denom : 0.0;
    return row;
}

TrendTable trend_table(double epsilon, const std::vector<long>& n_values) {
    for (size_t i = 1; i < n_values.size(); ++i)
        if (n_values[i] <= n_values[i - 1])
            throw std::invalid_argument("trend_table: n values must be strictly increasing");

    TrendTable table;
    for (long n : n_values) {
        AsymptoticParams p = params_from_epsilon(epsilon, n);
        if (!p.feasible()) continue;  // skipped, not an error
        table.rows.push_back(evaluate_row(p));
    }
    size_t usable = 0;
    for (const auto& row : table.rows)
        if (!row.degenerate) ++usable;
    if (usable < 4)
        throw std::invalid_argument("trend_table: insufficient range (need >= 4 feasible rows)");

    const size_t count = table.rows.size();
    const size_t tail_start = count / 2;
    bool tail_clean = true;
    for (size_t i = tail_start; i < count; ++i)
        if (table.rows[i].degenerate) tail_clean = false;

    TrendVerdicts v;
    v.evaluated = tail_clean;
    if (tail_clean) {
        v.ratio_non_increasing = true;
        v.claim2_bounded = true;
        v.claim3_increasing = true;
        for (size_t i = tail_start; i < count; ++i) {
            const auto& row = table.rows[i];
            if (i > tail_start) {
                const auto& prev = table.rows[i - 1];
                if (row.ratio > prev.ratio + kMonotoneSlack) v.ratio_non_increasing = false;
                if (row.claim3_statistic <= prev.claim3_statistic) v.claim3_increasing = false;
            }
            if (row.claim2_exponent > 1.0 + epsilon + kMonotoneSlack) v.claim2_bounded = false;
        }
        const auto& last = table.rows.back();
        double bound = (static_cast<double>(last.n - last.b) / static_cast<double>(last.a))
                       * last.log_K;
        v.claim2_strict = last.log_F < bound;
    }
    table.verdicts = v;
    return table;
}

std::string TrendTable::to_csv() const {
    std::ostringstream os;
    os << "n,a,b,c,log_K,log_F,log_Fstar,ratio,claim2_exp,claim3_stat,degenerate\n";
    for (const auto& r : rows)
        os << r.n << "," << r.a << "," << r.b << "," << r.c << "," << fmt(r.log_K) << ","
           << fmt(r.log_F) << "," << fmt(r.log_Fstar) << "," << fmt(r.ratio) << ","
           << fmt(r.claim2_exponent) << "," << fmt(r.claim3_statistic) << ","
           << (r.degenerate ? 1 : 0) << "\n";
    if (!verdicts.evaluated) {
        os << "# verdicts withheld: degenerate rows in tail\n";
    } else {
        os << "# verdict ratio_non_increasing=" << (verdicts.ratio_non_increasing ? "pass" : "fail")
           << "\n";
        os << "# verdict claim2_bounded=" << (verdicts.claim2_bounded ? "pass" : "fail")
           << " claim2_strict=" << (verdicts.claim2_strict ? "pass" : "fail") << "\n";
        os << "# verdict claim3_increasing=" << (verdicts.claim3_increasing ? "pass" : "fail")
           << "\n";
    }
    return os.str();
}

std::vector<ApproxBinRow> approx_bin_check(const std::function<long(long)>& f,
                                           const std::function<long(long)>& g,
                                           const std::vector<long>& n_values) {
    std::vector<ApproxBinRow> out;
    out.reserve(n_values.size());
    for (long n : n_values) {
        ApproxBinRow row;
        row.n = n;
        row.f = f(n);
        row.g = g(n);
        double fd = static_cast<double>(row.f);
        double gd = static_cast<double>(row.g);
        if (row.f == 0) {
            row.product = 1.0;  // empty product
            row.sandwich_lower = 1.0;
            row.exp_lower = 1.0;
        } else {
            row.product = std::exp(log_binomial(row.g, row.f) + std::lgamma(fd + 1.0)
                                   - fd * std::log(gd));
            row.sandwich_lower = std::exp(fd * std::log1p(-fd / gd));
            row.exp_lower = std::exp(-(fd * fd / gd) * 1.1);
        }
        row.in_bounds = row.product >= row.sandwich_lower - 1e-9 && row.product <= 1.0;
        out.push_back(row);
    }
    return out;
}

}  // namespace ccsim
