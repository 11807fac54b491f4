#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tytan/parallel.hpp"
#include "tytan/series.hpp"

namespace tytan {

inline constexpr double kSeluLambda = 1.0507009873554805;
inline constexpr double kSeluAlpha = 1.6732632423543772;
inline constexpr double kGeluScale = 1.702;

enum class ActivationKind { Selu, Sigmoid, Swish, Gelu, Tanh, Softplus };

// The post stage each activation mode applies to the series output.
enum class PostOp {
    Identity,         // raw series value
    RationalSigmoid,  // y / (y + 1)
    RationalTanh,     // (y - 1) / (y + 1)
    MulByInput,       // x * sigmoid composition (swish, gelu)
    SeluNegBranch,    // lambda*alpha*(e^x - 1) for x <= 0, lambda*x otherwise
    SoftplusCompose   // log series applied on top of the exp series
};

struct ActivationSpec {
    ActivationKind kind = ActivationKind::Sigmoid;
    double lambda = kSeluLambda;    // selu only
    double alpha = kSeluAlpha;      // selu only
    double gelu_scale = kGeluScale; // gelu only, fixed
};

inline const char* activation_name(ActivationKind k) {
    switch (k) {
        case ActivationKind::Selu: return "selu";
        case ActivationKind::Sigmoid: return "sigmoid";
        case ActivationKind::Swish: return "swish";
        case ActivationKind::Gelu: return "gelu";
        case ActivationKind::Tanh: return "tanh";
        case ActivationKind::Softplus: return "softplus";
    }
    return "?";
}

inline ActivationKind parse_activation_kind(const std::string& s) {
    if (s == "selu") return ActivationKind::Selu;
    if (s == "sigmoid") return ActivationKind::Sigmoid;
    if (s == "swish") return ActivationKind::Swish;
    if (s == "gelu") return ActivationKind::Gelu;
    if (s == "tanh") return ActivationKind::Tanh;
    if (s == "softplus") return ActivationKind::Softplus;
    throw std::invalid_argument("unknown activation: " + s);
}

inline PostOp post_op_for(ActivationKind k) {
    switch (k) {
        case ActivationKind::Sigmoid: return PostOp::RationalSigmoid;
        case ActivationKind::Tanh: return PostOp::RationalTanh;
        case ActivationKind::Swish:
        case ActivationKind::Gelu: return PostOp::MulByInput;
        case ActivationKind::Selu: return PostOp::SeluNegBranch;
        case ActivationKind::Softplus: return PostOp::SoftplusCompose;
    }
    return PostOp::Identity;
}

inline void validate_spec(const ActivationSpec& spec) {
    if (!(spec.lambda > 0.0) || !(spec.alpha > 0.0))
        throw std::invalid_argument("activation parameters lambda and alpha must be positive");
    if (spec.gelu_scale != kGeluScale)
        throw std::invalid_argument("gelu scale is fixed at 1.702");
}

// Exact activation value, binary64 library transcendentals. GELU uses the
// sigmoid form x*sigma(1.702x), not the erf form.
inline double reference(const ActivationSpec& spec, double x) {
    validate_spec(spec);
    if (!std::isfinite(x))
        throw std::domain_error("reference: x must be finite");
    switch (spec.kind) {
        case ActivationKind::Sigmoid: return 1.0 / (1.0 + std::exp(-x));
        case ActivationKind::Tanh: return std::tanh(x);
        case ActivationKind::Swish: return x / (1.0 + std::exp(-x));
        case ActivationKind::Gelu: return x / (1.0 + std::exp(-spec.gelu_scale * x));
        case ActivationKind::Selu:
            return x > 0.0 ? spec.lambda * x : spec.lambda * spec.alpha * std::expm1(x);
        case ActivationKind::Softplus:
            return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
    }
    throw std::logic_error("unreachable");
}

// Prebuilt series state for evaluating one activation at one term count.
// literal_eq6 selects the plain product forms x*T(x) / x*T(1.702x) for
// swish/gelu instead of the rational sigmoid composition.
struct ApproxContext {
    ActivationSpec spec;
    CoefficientTable exp_series;
    std::optional<CoefficientTable> log_series;  // softplus only
    EnginePrecision precision = EnginePrecision::Double;
    bool literal_eq6 = false;
};

inline ApproxContext make_approx_context(const ActivationSpec& spec, int n_terms,
                                         EnginePrecision precision,
                                         bool literal_eq6 = false) {
    validate_spec(spec);
    ApproxContext ctx;
    ctx.spec = spec;
    ctx.exp_series = gen_coefficients(SeriesKind::Exp, n_terms);
    if (spec.kind == ActivationKind::Softplus)
        ctx.log_series = gen_coefficients(SeriesKind::LogOnePlus, n_terms);
    ctx.precision = precision;
    ctx.literal_eq6 = literal_eq6;
    return ctx;
}

// Argument fed to the exponential series. The composed forms evaluate the
// series at |arg| only and fold the sign into the post stage via the exact
// identities sigma(-v) = 1/(1+e^v), tanh(-v) = -tanh(v), e^-v = 1/e^v and
// softplus(v) = v + softplus(-v). A truncated series at a negative argument
// is a partial alternating sum: at low term counts it swings below -1 and
// the rational post stages blow up on the y+1 denominator, so negative
// arguments never reach the series. Literal swish/gelu keep the printed
// signed argument.
inline double series_argument(const ApproxContext& ctx, double x) {
    const EnginePrecision p = ctx.precision;
    switch (ctx.spec.kind) {
        case ActivationKind::Swish:
            return ctx.literal_eq6 ? x : std::fabs(x);
        case ActivationKind::Gelu: {
            const double scaled = round_to(round_to(ctx.spec.gelu_scale, p) * x, p);
            return ctx.literal_eq6 ? scaled : std::fabs(scaled);
        }
        case ActivationKind::Tanh:
            return std::fabs(round_to(2.0 * x, p));
        case ActivationKind::Sigmoid:
        case ActivationKind::Selu:
        case ActivationKind::Softplus:
            return std::fabs(x);
    }
    throw std::logic_error("unreachable");
}

// Rational sigmoid stage. series_value is the exp series at |v|; v carries
// the sign of the original sigmoid argument.
inline double sigmoid_from_series(double v, double series_value, EnginePrecision p) {
    const double den = round_to(series_value + 1.0, p);
    if (v < 0.0) return round_to(1.0 / den, p);
    return round_to(series_value / den, p);
}

// Applies the post stage for ctx.spec to the series output. Shared by the
// direct evaluation path and the engine simulation so the two stay
// bit-identical.
inline double finish_activation(const ApproxContext& ctx, double x, double series_value) {
    const EnginePrecision p = ctx.precision;
    const ActivationSpec& spec = ctx.spec;
    switch (spec.kind) {
        case ActivationKind::Sigmoid:
            return sigmoid_from_series(x, series_value, p);
        case ActivationKind::Swish: {
            if (ctx.literal_eq6) return round_to(x * series_value, p);
            return round_to(x * sigmoid_from_series(x, series_value, p), p);
        }
        case ActivationKind::Gelu: {
            if (ctx.literal_eq6) return round_to(x * series_value, p);
            const double scaled = round_to(round_to(spec.gelu_scale, p) * x, p);
            return round_to(x * sigmoid_from_series(scaled, series_value, p), p);
        }
        case ActivationKind::Tanh: {
            const double num = round_to(series_value - 1.0, p);
            const double den = round_to(series_value + 1.0, p);
            const double t = round_to(num / den, p);
            return x < 0.0 ? -t : t;
        }
        case ActivationKind::Selu: {
            const double lam = round_to(spec.lambda, p);
            if (x > 0.0) return round_to(lam * x, p);
            const double scale = round_to(lam * round_to(spec.alpha, p), p);
            const double recip = round_to(1.0 / series_value, p);
            return round_to(scale * round_to(recip - 1.0, p), p);
        }
        case ActivationKind::Softplus: {
            // w = 1/(T+1) = sigma(-|x|) in (0, 1/2]; the log series at -w is
            // the truncated log(1-w), so -log(1-w) = log(1+e^-|x|).
            const double den = round_to(series_value + 1.0, p);
            const double w = round_to(1.0 / den, p);
            const double log_part = horner_eval(*ctx.log_series, -w, ctx.precision);
            const double core = -log_part;
            return x > 0.0 ? round_to(x + core, p) : core;
        }
    }
    throw std::logic_error("unreachable");
}

inline double approx_eval(const ApproxContext& ctx, double x) {
    if (!std::isfinite(x))
        throw std::domain_error("approx_eval: x must be finite");
    const double arg = series_argument(ctx, x);
    const double y = horner_eval(ctx.exp_series, arg, ctx.precision);
    return finish_activation(ctx, x, y);
}

inline double approx_activation(const ActivationSpec& spec, double x, int n_terms,
                                EnginePrecision precision, bool literal_eq6 = false) {
    return approx_eval(make_approx_context(spec, n_terms, precision, literal_eq6), x);
}

// |approx - reference| statistics over an inclusive grid.
struct SweepResult {
    ActivationSpec activation;
    int n_terms = 0;
    double grid_lo = 0, grid_hi = 0, grid_step = 0;
    double max_abs_err = 0, mean_abs_err = 0, argmax_x = 0;
};

inline constexpr double kDefaultGridLo = -5.0;
inline constexpr double kDefaultGridHi = 5.0;
inline constexpr double kDefaultGridStep = 0.01;

inline SweepResult sweep_error(const ActivationSpec& spec, int n_terms, double grid_lo,
                               double grid_hi, double grid_step, EnginePrecision precision,
                               bool literal_eq6 = false) {
    if (!(grid_step > 0.0) || grid_lo > grid_hi)
        throw std::invalid_argument("sweep_error: empty grid");
    const auto count =
        static_cast<std::size_t>(std::floor((grid_hi - grid_lo) / grid_step + 1e-9)) + 1;
    const ApproxContext ctx = make_approx_context(spec, n_terms, precision, literal_eq6);

    // Parallel map, sequential reduce: identical to a sequential sweep for
    // any thread count.
    std::vector<double> errs(count);
    parallel_for(count, [&](std::size_t i) {
        const double x = grid_lo + static_cast<double>(i) * grid_step;
        errs[i] = std::fabs(approx_eval(ctx, x) - reference(spec, x));
    });

    SweepResult r;
    r.activation = spec;
    r.n_terms = n_terms;
    r.grid_lo = grid_lo;
    r.grid_hi = grid_hi;
    r.grid_step = grid_step;
    double sum = 0.0;
    double max_err = -1.0;
    double argmax = grid_lo;
    for (std::size_t i = 0; i < count; ++i) {
        sum += errs[i];
        if (errs[i] > max_err) {
            max_err = errs[i];
            argmax = grid_lo + static_cast<double>(i) * grid_step;
        }
    }
    r.max_abs_err = max_err;
    r.mean_abs_err = sum / static_cast<double>(count);
    r.argmax_x = argmax;
    return r;
}

inline SweepResult sweep_error_default_grid(const ActivationSpec& spec, int n_terms,
                                            EnginePrecision precision,
                                            bool literal_eq6 = false) {
    return sweep_error(spec, n_terms, kDefaultGridLo, kDefaultGridHi, kDefaultGridStep,
                       precision, literal_eq6);
}

// Smallest n <= n_max whose default-grid max error is within tol, or nullopt.
// This is the point of convergence that caps the order search.
inline std::optional<int> convergence_threshold(const ActivationSpec& spec, double tol,
                                                int n_max, EnginePrecision precision) {
    if (!(tol > 0.0)) throw std::invalid_argument("convergence_threshold: tol must be positive");
    if (n_max < 1) throw std::invalid_argument("convergence_threshold: n_max must be >= 1");
    const int limit = std::min(n_max, kMaxSeriesTerms);
    for (int n = 1; n <= limit; ++n) {
        if (sweep_error_default_grid(spec, n, precision).max_abs_err <= tol) return n;
    }
    return std::nullopt;
}

}  // namespace tytan
