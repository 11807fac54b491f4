#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tytan {

// Highest supported term count. Past ~40 terms every supported composition
// has converged at double precision on the working range; 64 leaves headroom.
inline constexpr int kMaxSeriesTerms = 64;

enum class SeriesKind {
    Exp,        // sum_k x^k / k!
    LogOnePlus  // sum_{k>=1} (-1)^{k+1} y^k / k, coefficient 0 is exactly 0
};

// Arithmetic width of the evaluation engine. Single mimics a 32-bit datapath:
// the accumulator is rounded back to binary32 after every multiply and every
// add, and coefficients are read pre-rounded to binary32. Double adds no
// rounding beyond native IEEE-754 binary64 operations.
enum class EnginePrecision { Double, Single };

inline const char* series_kind_name(SeriesKind k) {
    return k == SeriesKind::Exp ? "exp" : "log1p";
}

inline SeriesKind parse_series_kind(const std::string& s) {
    if (s == "exp") return SeriesKind::Exp;
    if (s == "log1p") return SeriesKind::LogOnePlus;
    throw std::invalid_argument("unknown series kind: " + s);
}

inline const char* precision_name(EnginePrecision p) {
    return p == EnginePrecision::Double ? "double" : "single";
}

inline EnginePrecision parse_precision(const std::string& s) {
    if (s == "double") return EnginePrecision::Double;
    if (s == "single") return EnginePrecision::Single;
    throw std::invalid_argument("unknown precision: " + s);
}

// Ordered Taylor coefficients c_0 .. c_{n-1} for one series kind.
struct CoefficientTable {
    SeriesKind kind = SeriesKind::Exp;
    std::vector<double> coefficients;

    int n_terms() const { return static_cast<int>(coefficients.size()); }
};

inline void validate_table(const CoefficientTable& table) {
    if (table.coefficients.empty())
        throw std::invalid_argument("coefficient table must hold at least one term");
    if (table.n_terms() > kMaxSeriesTerms)
        throw std::invalid_argument("coefficient table exceeds the " +
                                    std::to_string(kMaxSeriesTerms) + "-term cap");
}

// Builds the coefficient table by recurrence (c_k = c_{k-1}/k for exp), not by
// naive factorials, so no intermediate overflows.
inline CoefficientTable gen_coefficients(SeriesKind kind, int n_terms) {
    if (n_terms < 1 || n_terms > kMaxSeriesTerms)
        throw std::invalid_argument("n_terms must be in [1, " +
                                    std::to_string(kMaxSeriesTerms) + "], got " +
                                    std::to_string(n_terms));
    CoefficientTable table;
    table.kind = kind;
    table.coefficients.resize(static_cast<std::size_t>(n_terms));
    if (kind == SeriesKind::Exp) {
        table.coefficients[0] = 1.0;
        for (int k = 1; k < n_terms; ++k)
            table.coefficients[static_cast<std::size_t>(k)] =
                table.coefficients[static_cast<std::size_t>(k - 1)] / k;
    } else {
        table.coefficients[0] = 0.0;
        double sign = 1.0;
        for (int k = 1; k < n_terms; ++k) {
            table.coefficients[static_cast<std::size_t>(k)] = sign / k;
            sign = -sign;
        }
    }
    return table;
}

// Rounds v to the engine width. Binary32 round-trips through a float cast,
// which is IEEE round-to-nearest-even.
inline double round_to(double v, EnginePrecision p) {
    return p == EnginePrecision::Single
               ? static_cast<double>(static_cast<float>(v))
               : v;
}

// Coefficient as the engine reads it: a Single engine loads buffers that were
// quantized to binary32 up front.
inline double coefficient_at(const CoefficientTable& table, int k, EnginePrecision p) {
    return round_to(table.coefficients[static_cast<std::size_t>(k)], p);
}

// One MAC iteration of the nested form: multiply by x, add the next (already
// width-rounded) coefficient, rounding the accumulator after each operation.
inline double horner_step(double acc, double x, double coeff, EnginePrecision p) {
    acc = round_to(acc * x, p);
    return round_to(acc + coeff, p);
}

// Evaluates c_0 + x(c_1 + x(c_2 + ...)) innermost-first. Deterministic:
// identical inputs give bit-identical results in both precisions.
inline double horner_eval(const CoefficientTable& table, double x, EnginePrecision precision) {
    validate_table(table);
    if (!std::isfinite(x))
        throw std::domain_error("horner_eval: x must be finite");
    const int n = table.n_terms();
    double acc = coefficient_at(table, n - 1, precision);
    for (int k = n - 2; k >= 0; --k)
        acc = horner_step(acc, x, coefficient_at(table, k, precision), precision);
    return acc;
}

// Reference route: plain term-by-term sum with explicit powers, binary64
// only. Kept deliberately independent of horner_eval so the two can check
// each other.
inline double power_sum_eval(const CoefficientTable& table, double x) {
    validate_table(table);
    if (!std::isfinite(x))
        throw std::domain_error("power_sum_eval: x must be finite");
    double sum = 0.0;
    double power = 1.0;
    const int n = table.n_terms();
    for (int k = 0; k < n; ++k) {
        sum += table.coefficients[static_cast<std::size_t>(k)] * power;
        power *= x;
    }
    return sum;
}

}  // namespace tytan
