#ifndef UALP_SPECIAL_FUNCTIONS_HPP
#define UALP_SPECIAL_FUNCTIONS_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ualp {

#if defined(__SIZEOF_FLOAT128__)
using wide_real = __float128;
/// Largest argument accepted by bessel_j. Above this the alternating series
/// loses more than 1e-10 absolute accuracy even in 113-bit arithmetic.
inline constexpr double bessel_j_max_argument = 50.0;
#else
using wide_real = long double;
inline constexpr double bessel_j_max_argument = 22.0;
#endif

namespace detail {

inline void require_finite(double x, const char* what)
{
    if (!std::isfinite(x)) {
        throw std::domain_error(std::string(what) + ": argument must be finite");
    }
}

inline bool is_integer(double x) { return std::isfinite(x) && x == std::floor(x); }

inline wide_real wide_abs(wide_real x) { return x < 0 ? -x : x; }

}  // namespace detail

/// Order of a Bessel function or index of a Gegenbauer polynomial.
class RealOrder {
public:
    explicit RealOrder(double value) : value_(value)
    {
        detail::require_finite(value, "RealOrder");
    }

    [[nodiscard]] double value() const noexcept { return value_; }

private:
    double value_;
};

/// ln Gamma(x) for x > 0.
inline double log_gamma(double x)
{
    detail::require_finite(x, "log_gamma");
    if (x <= 0.0) {
        throw std::domain_error("log_gamma: argument must be positive");
    }
    return std::lgamma(x);
}

/// Gamma(a) / Gamma(b) without forming either factor.
///
/// Integer offsets up to 64 are multiplied out directly, which keeps the
/// common Gamma(x + k) / Gamma(x) case exact to a few ulps for any x.
inline double gamma_ratio(double a, double b)
{
    detail::require_finite(a, "gamma_ratio");
    detail::require_finite(b, "gamma_ratio");
    if (a <= 0.0 || b <= 0.0) {
        throw std::domain_error("gamma_ratio: arguments must be positive");
    }
    const double diff = a - b;
    if (detail::is_integer(diff) && std::fabs(diff) <= 64.0) {
        double product = 1.0;
        if (diff >= 0.0) {
            for (double y = b; y < a - 0.5; y += 1.0) {
                product *= y;
            }
            return product;
        }
        for (double y = a; y < b - 0.5; y += 1.0) {
            product *= y;
        }
        return 1.0 / product;
    }
    return std::exp(std::lgamma(a) - std::lgamma(b));
}

/// Bessel function of the first kind J_nu(x) for nu >= 0, 0 <= x <= bessel_j_max_argument.
///
/// Ascending series sum_k (-1)^k (x/2)^(nu+2k) / (k! Gamma(nu+k+1)). The leading
/// factor is computed in double; the normalized series (first term 1) is
/// accumulated in wide_real so that cancellation between terms of size
/// ~I_nu(x) does not reach the 1e-10 level.
inline double bessel_j(RealOrder order, double x)
{
    const double nu = order.value();
    detail::require_finite(x, "bessel_j");
    if (nu < 0.0) {
        throw std::domain_error("bessel_j: order must be non-negative");
    }
    if (x < 0.0) {
        throw std::domain_error("bessel_j: argument must be non-negative");
    }
    if (x > bessel_j_max_argument) {
        throw std::range_error("bessel_j: argument exceeds supported range (x <= " +
                               std::to_string(bessel_j_max_argument) + ")");
    }
    if (x == 0.0) {
        return nu == 0.0 ? 1.0 : 0.0;
    }

    const double half = 0.5 * x;
    const double leading = std::exp(nu * std::log(half) - std::lgamma(nu + 1.0));
    if (leading == 0.0) {
        return 0.0;
    }

    const wide_real q = -static_cast<wide_real>(half) * static_cast<wide_real>(half);
    const wide_real wnu = nu;
    wide_real term = 1;
    wide_real sum = 1;
    const wide_real cutoff = 1e-17;
    for (int k = 1; k < 1000; ++k) {
        term *= q / (static_cast<wide_real>(k) * (wnu + k));
        sum += term;
        if (detail::wide_abs(term) < cutoff * detail::wide_abs(sum)) {
            break;
        }
    }
    return leading * static_cast<double>(sum);
}

/// Gegenbauer polynomial C_n^lambda(x) by the three-term recurrence.
inline double gegenbauer_c(int n, double lambda, double x)
{
    detail::require_finite(lambda, "gegenbauer_c");
    detail::require_finite(x, "gegenbauer_c");
    if (n < 0) {
        throw std::domain_error("gegenbauer_c: degree must be non-negative");
    }
    if (lambda <= 0.0) {
        throw std::domain_error("gegenbauer_c: lambda must be positive");
    }
    if (n == 0) {
        return 1.0;
    }
    double prev = 1.0;
    double curr = 2.0 * lambda * x;
    for (int k = 2; k <= n; ++k) {
        const double next = (2.0 * x * (k + lambda - 1.0) * curr - (k + 2.0 * lambda - 2.0) * prev) / k;
        prev = curr;
        curr = next;
    }
    return curr;
}

}  // namespace ualp

#endif  // UALP_SPECIAL_FUNCTIONS_HPP
