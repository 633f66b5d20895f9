#ifndef UALP_POLYNOMIAL_HPP
#define UALP_POLYNOMIAL_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ualp/special_functions.hpp"

namespace ualp {

/// Order m' >= 0 and degree offset n >= 0 of a universal associated Legendre
/// polynomial. The degree l' = m' + n is always derived, never stored.
class PolyParams {
public:
    PolyParams(double m_prime, int n) : m_prime_(m_prime), n_(n)
    {
        detail::require_finite(m_prime, "PolyParams");
        if (m_prime < 0.0) {
            throw std::domain_error("PolyParams: m' must be non-negative");
        }
        if (n < 0) {
            throw std::domain_error("PolyParams: n must be non-negative");
        }
    }

    [[nodiscard]] double m_prime() const noexcept { return m_prime_; }
    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] double l_prime() const noexcept { return m_prime_ + n_; }

    friend bool operator==(const PolyParams&, const PolyParams&) = default;

private:
    double m_prime_;
    int n_;
};

/// A point x = cos(theta) in [-1, 1].
class EvalDomainPoint {
public:
    EvalDomainPoint(double x) : x_(x)  // NOLINT(google-explicit-constructor)
    {
        if (!(std::fabs(x) <= 1.0)) {
            throw std::domain_error("x must lie in [-1, 1], got " + std::to_string(x));
        }
    }

    [[nodiscard]] double value() const noexcept { return x_; }
    operator double() const noexcept { return x_; }  // NOLINT(google-explicit-constructor)

private:
    double x_;
};

/// Which power of two appears in the denominator of the explicit series.
/// Only TwoToDegree agrees with the generating function; TwoToSummationIndex
/// is kept for the diagnostic that documents the discrepancy.
enum class SeriesNormalization { TwoToDegree, TwoToSummationIndex };

/// Explicit series for P_{l'}^{m'}(x), with the Gamma-function coefficients
/// precomputed in log space. Terms are combined largest-first.
class UalpSeries {
public:
    explicit UalpSeries(PolyParams params,
                        SeriesNormalization normalization = SeriesNormalization::TwoToDegree)
        : params_(params)
    {
        const double l = params.l_prime();
        const int n = params.n();
        for (int nu = 0; 2 * nu <= n; ++nu) {
            const double two_power = normalization == SeriesNormalization::TwoToDegree ? l : nu;
            Term term;
            term.power = n - 2 * nu;
            term.negative = (nu % 2) != 0;
            term.log_coefficient = std::lgamma(2.0 * l - 2.0 * nu + 1.0) - two_power * std::log(2.0) -
                                   std::lgamma(nu + 1.0) - std::lgamma(n - 2.0 * nu + 1.0) -
                                   std::lgamma(l - nu + 1.0);
            terms_.push_back(term);
        }
    }

    [[nodiscard]] const PolyParams& params() const noexcept { return params_; }

    /// P(x) with the caller supplying one_minus_x_sq = 1 - x^2 (which may be
    /// known more accurately than it can be recovered from x).
    [[nodiscard]] double evaluate(double x, double one_minus_x_sq) const
    {
        const double m = params_.m_prime();
        if (m > 0.0) {
            if (one_minus_x_sq <= 0.0) {
                return 0.0;
            }
            return sum(x, 0.5 * m * std::log(one_minus_x_sq));
        }
        return sum(x, 0.0);
    }

    [[nodiscard]] double operator()(EvalDomainPoint x) const
    {
        const double v = x.value();
        return evaluate(v, (1.0 - v) * (1.0 + v));
    }

    /// P(x) / (1 - x^2)^(m'/2): the degree-n polynomial factor.
    [[nodiscard]] double polynomial_part(double x) const { return sum(x, 0.0); }

private:
    struct Term {
        int power;
        bool negative;
        double log_coefficient;
    };

    [[nodiscard]] double sum(double x, double log_prefactor) const
    {
        const double log_abs_x = x == 0.0 ? 0.0 : std::log(std::fabs(x));
        std::vector<double> values;
        values.reserve(terms_.size());
        for (const Term& term : terms_) {
            if (term.power > 0 && x == 0.0) {
                continue;
            }
            const double magnitude = std::exp(term.log_coefficient + log_prefactor + term.power * log_abs_x);
            const bool odd_negative_x = x < 0.0 && (term.power % 2) != 0;
            values.push_back(term.negative != odd_negative_x ? -magnitude : magnitude);
        }
        std::sort(values.begin(), values.end(),
                  [](double a, double b) { return std::fabs(a) > std::fabs(b); });
        double total = 0.0;
        for (double v : values) {
            total += v;
        }
        return total;
    }

    PolyParams params_;
    std::vector<Term> terms_;
};

/// P_{l'}^{m'}(x) from the explicit finite series (no Condon-Shortley phase).
inline double ualp_eval(PolyParams params, EvalDomainPoint x)
{
    return UalpSeries(params)(x);
}

namespace detail {

/// Gamma(2m'+1) / (2^m' Gamma(m'+1)), the generating-function prefactor.
inline double generating_prefactor(double m_prime)
{
    return std::exp(std::lgamma(2.0 * m_prime + 1.0) - m_prime * std::log(2.0) - std::lgamma(m_prime + 1.0));
}

}  // namespace detail

/// P_{l'}^{m'}(x) as the v^n coefficient of the generating function:
/// prefactor * (1 - x^2)^(m'/2) * C_n^(m'+1/2)(x).
inline double ualp_eval_gegenbauer(PolyParams params, EvalDomainPoint x)
{
    const double m = params.m_prime();
    const double v = x.value();
    const double envelope = m > 0.0 ? std::pow((1.0 - v) * (1.0 + v), 0.5 * m) : 1.0;
    return detail::generating_prefactor(m) * envelope * gegenbauer_c(params.n(), m + 0.5, v);
}

/// Closed form of sum_{l'} P_{l'}^{m'}(x) v^{l'}.
inline double ualp_generating_fn(double m_prime, EvalDomainPoint x, double v)
{
    detail::require_finite(m_prime, "ualp_generating_fn");
    detail::require_finite(v, "ualp_generating_fn");
    if (m_prime < 0.0) {
        throw std::domain_error("ualp_generating_fn: m' must be non-negative");
    }
    if (!(std::fabs(v) < 1.0)) {
        throw std::domain_error("ualp_generating_fn: |v| must be < 1");
    }
    const double xv = x.value();
    const double v_power = std::pow(v, m_prime);
    if (std::isnan(v_power)) {
        throw std::domain_error("ualp_generating_fn: v^m' undefined for negative v and non-integer m'");
    }
    const double envelope = m_prime > 0.0 ? std::pow((1.0 - xv) * (1.0 + xv), 0.5 * m_prime) : 1.0;
    return detail::generating_prefactor(m_prime) * envelope *
           std::pow(1.0 - 2.0 * xv * v + v * v, -m_prime - 0.5) * v_power;
}

/// Integral of P^2 over [-1, 1]: 2 Gamma(l'+m'+1) / ((2l'+1) n!).
inline double ualp_norm_sq(PolyParams params)
{
    const double l = params.l_prime();
    const double m = params.m_prime();
    return 2.0 * std::exp(std::lgamma(l + m + 1.0) - std::lgamma(params.n() + 1.0)) / (2.0 * l + 1.0);
}

/// Integral of P^2 / (1 - x^2) over [-1, 1]: Gamma(l'+m'+1) / (m' n!). Diverges at m' = 0.
inline double ualp_weighted_norm_sq(PolyParams params)
{
    const double m = params.m_prime();
    if (m <= 0.0) {
        throw std::domain_error("ualp_weighted_norm_sq: diverges for m' = 0");
    }
    return std::exp(std::lgamma(params.l_prime() + m + 1.0) - std::lgamma(params.n() + 1.0)) / m;
}

namespace detail {

inline constexpr double composed_argument_slack = 1e-12;

/// P_{l'}((xt-1)/sqrt(D)) D^{-(l'+1)/2} with D = 1 + t^2 - 2tx, given
/// one_minus_x = 1 - x accurately. 1 - y^2 is formed as t^2 (1-x^2) / D.
inline double shifted_integrand(const UalpSeries& series, double x, double one_minus_x, double t)
{
    if (!(t > 0.0 && t < 1.0)) {
        throw std::domain_error("ualp_shifted_integrand: t must lie in (0, 1)");
    }
    const double d = (1.0 - t) * (1.0 - t) + 2.0 * t * one_minus_x;
    double y = (x * t - 1.0) / std::sqrt(d);
    if (std::fabs(y) > 1.0 + composed_argument_slack) {
        throw std::logic_error("ualp_shifted_integrand: composed argument left [-1, 1]: " + std::to_string(y));
    }
    y = std::clamp(y, -1.0, 1.0);
    const double one_minus_x_sq = std::max(0.0, one_minus_x * (2.0 - one_minus_x));
    const double one_minus_y_sq = t * t * one_minus_x_sq / d;
    return series.evaluate(y, one_minus_y_sq) * std::pow(d, -(series.params().l_prime() + 1.0) / 2.0);
}

}  // namespace detail

/// Integrand of the complicated-argument integral:
/// P_{l'}^{m'}((xt-1)/sqrt(1+t^2-2tx)) * (1+t^2-2tx)^{-(l'+1)/2}.
inline double ualp_shifted_integrand(PolyParams params_l, EvalDomainPoint x, double t)
{
    const UalpSeries series(params_l);
    return detail::shifted_integrand(series, x.value(), 1.0 - x.value(), t);
}

}  // namespace ualp

#endif  // UALP_POLYNOMIAL_HPP
