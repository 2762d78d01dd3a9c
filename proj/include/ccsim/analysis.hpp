#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ccsim/combinatorics.hpp"

namespace ccsim {

/// Parameter recipe: c = ceil(1 + 1/epsilon), a = ceil((ln n)^c), b = n-a-c.
struct AsymptoticParams {
    double epsilon = 0.0;
    int c = 0;
    long n = 0;
    long a = 0;
    long b = 0;

    bool feasible() const { return b >= 0; }
};

AsymptoticParams params_from_epsilon(double epsilon, long n);

struct AnalysisRow {
    long n = 0, a = 0, b = 0;
    int c = 0;
    double log_K = 0.0;      // ln C(n,a)
    double log_F = 0.0;      // ln C(n,b)
    double log_Fstar = 0.0;  // ln C(K, C(n-b,a))
    double ratio = 0.0;      // R/R0, closed form, log domain
    std::optional<Rational> ratio_exact;  // populated when n <= 40
    double claim2_exponent = 0.0;         // log_F / log_K
    double claim3_statistic = 0.0;        // log_Fstar / (log_F)^c
    bool degenerate = false;  // F < K small-n regime, or inner binomial zero
};

AnalysisRow evaluate_row(const AsymptoticParams& p);

struct TrendVerdicts {
    bool evaluated = false;  // false when tail rows are degenerate
    bool ratio_non_increasing = false;
    bool claim2_bounded = false;       // claim2_exponent <= 1 + epsilon on tail
    bool claim2_strict = false;        // log_F < ((n-b)/a) * log_K at largest n
    bool claim3_increasing = false;

    bool all_pass() const {
        return evaluated && ratio_non_increasing && claim2_bounded && claim2_strict &&
               claim3_increasing;
    }
};

struct TrendTable {
    std::vector<AnalysisRow> rows;
    TrendVerdicts verdicts;

    /// CSV with header and trailing `#` verdict comment lines.
    std::string to_csv() const;
};

/// Rows for each n (strictly increasing), verdicts over the tail half.
/// Throws std::invalid_argument when fewer than 4 feasible rows exist.
TrendTable trend_table(double epsilon, const std::vector<long>& n_values);

struct ApproxBinRow {
    long n = 0;
    long f = 0;
    long g = 0;
    double product = 0.0;        // C(g,f) * f! / g^f, log domain
    double sandwich_lower = 0.0; // (1 - f/g)^f
    double exp_lower = 0.0;      // exp(-(f^2/g) * (1 + 0.1))
    bool in_bounds = false;      // sandwich_lower - 1e-9 <= product <= 1
};

/// Evaluates the binomial approximation product for a (f, g) function pair.
std::vector<ApproxBinRow> approx_bin_check(const std::function<long(long)>& f,
                                           const std::function<long(long)>& g,
                                           const std::vector<long>& n_values);

}  // namespace ccsim
