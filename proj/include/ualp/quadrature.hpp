#ifndef UALP_QUADRATURE_HPP
#define UALP_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace ualp {

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_levels = 12;
    int max_segments = 200;

    void validate() const
    {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
            throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
        }
        if (max_levels < 3) {
            throw std::invalid_argument("QuadratureSpec: max_levels must be >= 3");
        }
        if (max_segments < 10) {
            throw std::invalid_argument("QuadratureSpec: max_segments must be >= 10");
        }
    }

    [[nodiscard]] double tolerance_for(double value) const { return std::max(abs_tol, rel_tol * std::fabs(value)); }
};

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
    long evaluations = 0;
};

/// Thrown when the integrand returns NaN or infinity at a quadrature node.
class IntegrandEvaluationError : public std::runtime_error {
public:
    IntegrandEvaluationError(double x, double fx)
        : std::runtime_error("integrand evaluation failed at x = " + std::to_string(x) +
                             " (value " + std::to_string(fx) + ")")
    {
    }
};

/// Integrands may take (x) or (x, x - a, b - x). The three-argument form
/// receives the distances to both endpoints without cancellation, which
/// matters for endpoint singularities like (1 - x)^(-1/2).
template <typename F>
concept EndpointAwareIntegrand = std::is_invocable_r_v<double, F&, double, double, double>;

template <typename F>
concept PlainIntegrand = std::is_invocable_r_v<double, F&, double> && !EndpointAwareIntegrand<F>;

namespace detail {

inline constexpr int tanh_sinh_min_levels = 3;
inline constexpr double tanh_sinh_t_max = 7.0;

/// Weighted contribution of the tanh-sinh node at parameter t on [a, b].
/// Returns false once the node has collapsed onto an endpoint.
template <typename F>
bool tanh_sinh_node(F& f, double a, double b, double t, double& contribution, long& evaluations)
{
    const double half = 0.5 * (b - a);
    const double u = 0.5 * std::numbers::pi * std::sinh(t);
    const double e = std::exp(-2.0 * std::fabs(u));
    const double complement = 2.0 * e / (1.0 + e);  // 1 - |tanh u|
    if (complement == 0.0) {
        return false;
    }
    const double weight = 0.5 * std::numbers::pi * std::cosh(t) * 4.0 * e / ((1.0 + e) * (1.0 + e));

    double x = 0.0;
    double to_left = 0.0;
    double to_right = 0.0;
    if (t > 0.0) {
        to_right = half * complement;
        to_left = (b - a) - to_right;
        x = b - to_right;
    } else if (t < 0.0) {
        to_left = half * complement;
        to_right = (b - a) - to_left;
        x = a + to_left;
    } else {
        to_left = half;
        to_right = half;
        x = a + half;
    }
    if (to_left <= 0.0 || to_right <= 0.0) {
        return false;
    }

    double fx = 0.0;
    if constexpr (EndpointAwareIntegrand<F>) {
        fx = f(x, to_left, to_right);
    } else {
        if (x <= a || x >= b) {
            return false;
        }
        fx = f(x);
    }
    ++evaluations;
    if (!std::isfinite(fx)) {
        throw IntegrandEvaluationError(x, fx);
    }
    contribution = half * weight * fx;
    return true;
}

template <typename F>
double tanh_sinh_level_sum(F& f, double a, double b, double h, bool odd_only, long& evaluations)
{
    double sum = 0.0;
    const int stride = odd_only ? 2 : 1;
    const int first = odd_only ? 1 : 0;
    if (!odd_only) {
        double c = 0.0;
        if (tanh_sinh_node(f, a, b, 0.0, c, evaluations)) {
            sum += c;
        }
    }
    for (int sign : {1, -1}) {
        for (int k = std::max(first, 1); k * h <= tanh_sinh_t_max; k += stride) {
            double c = 0.0;
            if (!tanh_sinh_node(f, a, b, sign * k * h, c, evaluations)) {
                break;
            }
            sum += c;
        }
    }
    return sum;
}

}  // namespace detail

/// Double-exponential (tanh-sinh) quadrature of f over [a, b].
///
/// The step halves each level; the error estimate is the difference between
/// the last two level results. Tolerates integrable algebraic endpoint
/// singularities.
template <typename F>
    requires EndpointAwareIntegrand<F> || PlainIntegrand<F>
IntegralResult integrate_finite(F&& f, double a, double b, const QuadratureSpec& spec = {})
{
    spec.validate();
    if (!(std::isfinite(a) && std::isfinite(b) && a < b)) {
        throw std::invalid_argument("integrate_finite: requires finite a < b");
    }
    IntegralResult result;
    double h = 1.0;
    double raw = detail::tanh_sinh_level_sum(f, a, b, h, false, result.evaluations);
    double estimate = h * raw;
    double previous = estimate;
    for (int level = 1; level <= spec.max_levels; ++level) {
        h *= 0.5;
        raw += detail::tanh_sinh_level_sum(f, a, b, h, true, result.evaluations);
        estimate = h * raw;
        result.error_estimate = std::fabs(estimate - previous);
        previous = estimate;
        if (level >= detail::tanh_sinh_min_levels && result.error_estimate <= spec.tolerance_for(estimate)) {
            result.converged = true;
            break;
        }
    }
    result.value = estimate;
    return result;
}

/// Integral of f over [a, inf) via x = a + u / (1 - u) and tanh-sinh in u.
template <typename F>
    requires PlainIntegrand<F>
IntegralResult integrate_semi_infinite(F&& f, double a, const QuadratureSpec& spec = {})
{
    auto mapped = [&f, a](double u, double, double one_minus_u) {
        const double x = a + u / one_minus_u;
        if (!std::isfinite(x)) {
            return 0.0;  // node beyond the largest double
        }
        const double fx = f(x);
        if (fx == 0.0) {
            return 0.0;
        }
        return fx / one_minus_u / one_minus_u;
    };
    return integrate_finite(mapped, 0.0, 1.0, spec);
}

namespace detail {

/// Wynn epsilon extrapolation of a partial-sum sequence; returns the entry of
/// the deepest even column. Stops descending when a difference sinks to
/// rounding level, in which case the sequence has already converged.
inline double wynn_epsilon(std::span<const double> sums)
{
    if (sums.empty()) {
        return 0.0;
    }
    double scale = 0.0;
    for (double s : sums) {
        scale = std::max(scale, std::fabs(s));
    }
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() * scale;

    std::vector<double> older(sums.size() + 1, 0.0);  // column k - 1
    std::vector<double> current(sums.begin(), sums.end());  // column k
    double best = sums.back();
    for (int k = 1; current.size() > 1; ++k) {
        std::vector<double> next(current.size() - 1);
        for (std::size_t i = 0; i + 1 < current.size(); ++i) {
            const double diff = current[i + 1] - current[i];
            if (std::fabs(diff) <= noise && k % 2 == 1) {
                return current.back();
            }
            if (diff == 0.0) {
                return best;
            }
            next[i] = older[i + 1] + 1.0 / diff;
        }
        older = std::move(current);
        current = std::move(next);
        if (k % 2 == 0) {
            best = current.back();
        }
    }
    return best;
}

inline constexpr std::size_t wynn_window = 40;

}  // namespace detail

/// Integral of an oscillating f over [boundaries.front(), inf).
///
/// Each segment between consecutive boundaries is integrated with
/// integrate_finite; the partial sums are extrapolated with the Wynn epsilon
/// algorithm (iterated Aitken / Shanks). Stops after two consecutive
/// extrapolated increments below tolerance, or reports converged = false when
/// the segment cap or the supplied boundaries run out.
template <typename F>
    requires PlainIntegrand<F>
IntegralResult integrate_oscillatory_semi_infinite(F&& f, std::span<const double> boundaries,
                                                   const QuadratureSpec& spec = {})
{
    spec.validate();
    if (boundaries.size() < 2) {
        throw std::invalid_argument("integrate_oscillatory_semi_infinite: need at least two boundaries");
    }
    for (std::size_t i = 0; i + 1 < boundaries.size(); ++i) {
        if (!(boundaries[i] < boundaries[i + 1]) || !std::isfinite(boundaries[i + 1])) {
            throw std::invalid_argument("integrate_oscillatory_semi_infinite: boundaries must be strictly increasing");
        }
    }

    QuadratureSpec segment_spec = spec;
    segment_spec.abs_tol = spec.abs_tol * 0.1;
    segment_spec.rel_tol = spec.rel_tol * 0.1;

    IntegralResult result;
    std::vector<double> partial_sums;
    double running = 0.0;
    double segment_error = 0.0;
    double previous_estimate = 0.0;
    int quiet_steps = 0;
    const std::size_t segments =
        std::min<std::size_t>(static_cast<std::size_t>(spec.max_segments), boundaries.size() - 1);
    for (std::size_t i = 0; i < segments; ++i) {
        const IntegralResult piece = integrate_finite(f, boundaries[i], boundaries[i + 1], segment_spec);
        result.evaluations += piece.evaluations;
        segment_error += piece.error_estimate;
        running += piece.value;
        partial_sums.push_back(running);

        const std::size_t window = std::min(partial_sums.size(), detail::wynn_window);
        const double estimate =
            detail::wynn_epsilon(std::span<const double>(partial_sums).last(window));
        const double increment = std::fabs(estimate - previous_estimate);
        previous_estimate = estimate;
        result.value = estimate;
        result.error_estimate = increment + segment_error;
        if (i >= 2 && increment <= spec.tolerance_for(estimate) &&
            result.error_estimate <= spec.tolerance_for(estimate)) {
            if (++quiet_steps >= 2) {
                result.converged = true;
                break;
            }
        } else {
            quiet_steps = 0;
        }
    }
    return result;
}

}  // namespace ualp

#endif  // UALP_QUADRATURE_HPP
