#ifndef UALP_IDENTITIES_HPP
#define UALP_IDENTITIES_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ualp/polynomial.hpp"
#include "ualp/quadrature.hpp"
#include "ualp/special_functions.hpp"

namespace ualp {

/// Parameters of the complicated-argument integral
/// int_{-1}^{1} P_{l'}^{m'}((xt-1)/sqrt(1+t^2-2tx)) P_{k'}^{m'}(x) (1+t^2-2tx)^{-(l'+1)/2} dx
/// with l' = m' + n_l and k' = m' + n_k.
struct MainIntegralParams {
    double m_prime = 0.0;
    int n_l = 0;
    int n_k = 0;
    double t = 0.5;

    void validate() const
    {
        detail::require_finite(m_prime, "MainIntegralParams");
        if (m_prime < 0.0 || n_l < 0 || n_k < 0) {
            throw std::domain_error("MainIntegralParams: m', n_l, n_k must be non-negative");
        }
        if (!(t > 0.0 && t < 1.0)) {
            throw std::domain_error("MainIntegralParams: t must lie in (0, 1)");
        }
    }

    [[nodiscard]] PolyParams l_params() const { return {m_prime, n_l}; }
    [[nodiscard]] PolyParams k_params() const { return {m_prime, n_k}; }
};

/// Parameters of int_0^inf J_n(alpha sqrt(x^2+z^2)) / (x^2+z^2)^(n/2) x^(2m+1) dx.
struct BesselIntegralParams {
    int n = 1;
    double m = 0.0;
    double alpha = 1.0;
    double z = 1.0;

    void validate() const
    {
        detail::require_finite(m, "BesselIntegralParams");
        detail::require_finite(alpha, "BesselIntegralParams");
        detail::require_finite(z, "BesselIntegralParams");
        if (n < 0) {
            throw std::domain_error("BesselIntegralParams: n must be non-negative");
        }
        if (!(m > -1.0)) {
            throw std::domain_error("BesselIntegralParams: m must exceed -1");
        }
        if (!(alpha > 0.0) || !(z > 0.0)) {
            throw std::domain_error("BesselIntegralParams: alpha and z must be positive");
        }
    }

    /// The integrand decays like x^(2m + 1/2 - n) with an oscillating sign;
    /// the integral converges iff n > 2m + 1/2.
    [[nodiscard]] bool converges() const { return n > 2.0 * m + 0.5; }
};

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

/// (2/(2l'+1)) Gamma(l'+m'+1)/Gamma(l'-m'+1) when n_l == n_k, else 0.
inline double orthogonality_closed_form(double m_prime, int n_l, int n_k)
{
    const PolyParams params(m_prime, n_l);
    (void)PolyParams(m_prime, n_k);
    if (n_l != n_k) {
        return 0.0;
    }
    return ualp_norm_sq(params);
}

/// (2 t^{k'}/(2k'+1)) (-1)^{n_l} Gamma(k'+l'+1) / (Gamma(l'-m'+1) Gamma(k'-m'+1)).
inline double main_integral_closed_form(const MainIntegralParams& p)
{
    p.validate();
    const double l = p.m_prime + p.n_l;
    const double k = p.m_prime + p.n_k;
    const double log_magnitude = std::log(2.0) + k * std::log(p.t) - std::log(2.0 * k + 1.0) +
                                 std::lgamma(k + l + 1.0) - std::lgamma(p.n_l + 1.0) -
                                 std::lgamma(p.n_k + 1.0);
    const double magnitude = std::exp(log_magnitude);
    return (p.n_l % 2 == 0) ? magnitude : -magnitude;
}

/// 2^m Gamma(m+1) / (alpha^(m+1) z^(n-m-1)) J_{n-m-1}(alpha z).
inline double bessel_integral_closed_form(const BesselIntegralParams& p)
{
    p.validate();
    const double order = p.n - p.m - 1.0;
    if (order < 0.0) {
        throw std::domain_error("bessel_integral_closed_form: requires n - m - 1 >= 0");
    }
    const double log_scale =
        p.m * std::log(2.0) + std::lgamma(p.m + 1.0) - (p.m + 1.0) * std::log(p.alpha) - order * std::log(p.z);
    return std::exp(log_scale) * bessel_j(RealOrder(order), p.alpha * p.z);
}

/// int_0^inf x^m exp(-beta x^n) dx = Gamma(gamma) / (n beta^gamma), gamma = (m+1)/n.
inline double power_exp_integral_closed_form(double m, double n, double beta)
{
    detail::require_finite(m, "power_exp_integral_closed_form");
    detail::require_finite(n, "power_exp_integral_closed_form");
    detail::require_finite(beta, "power_exp_integral_closed_form");
    if (!(beta > 0.0) || !(n > 0.0) || !(m > -1.0)) {
        throw std::domain_error("power_exp_integral_closed_form: requires beta > 0, n > 0, m > -1");
    }
    const double gamma = (m + 1.0) / n;
    return std::exp(std::lgamma(gamma) - gamma * std::log(beta)) / n;
}

// ---------------------------------------------------------------------------
// Numeric counterparts
// ---------------------------------------------------------------------------

inline IntegralResult norm_numeric(PolyParams params, const QuadratureSpec& spec = {})
{
    const UalpSeries series(params);
    return integrate_finite(
        [&series](double x, double to_left, double to_right) {
            const double p = series.evaluate(x, to_left * to_right);
            return p * p;
        },
        -1.0, 1.0, spec);
}

/// The integrand P^2/(1-x^2) = (1-x^2)^(m'-1) q(x)^2 is written through the
/// polynomial factor q so the endpoint singularity for m' < 1 stays exact.
inline IntegralResult weighted_norm_numeric(PolyParams params, const QuadratureSpec& spec = {})
{
    if (params.m_prime() <= 0.0) {
        throw std::domain_error("weighted_norm_numeric: diverges for m' = 0");
    }
    const UalpSeries series(params);
    const double m = params.m_prime();
    return integrate_finite(
        [&series, m](double x, double to_left, double to_right) {
            const double q = series.polynomial_part(x);
            return std::pow(to_left * to_right, m - 1.0) * q * q;
        },
        -1.0, 1.0, spec);
}

inline IntegralResult orthogonality_numeric(double m_prime, int n_l, int n_k, const QuadratureSpec& spec = {})
{
    const UalpSeries left(PolyParams(m_prime, n_l));
    const UalpSeries right(PolyParams(m_prime, n_k));
    return integrate_finite(
        [&left, &right](double x, double to_left, double to_right) {
            const double s = to_left * to_right;
            return left.evaluate(x, s) * right.evaluate(x, s);
        },
        -1.0, 1.0, spec);
}

inline IntegralResult main_integral_numeric(const MainIntegralParams& p, const QuadratureSpec& spec = {})
{
    p.validate();
    const UalpSeries shifted(p.l_params());
    const UalpSeries plain(p.k_params());
    const double t = p.t;
    return integrate_finite(
        [&](double x, double to_left, double to_right) {
            return detail::shifted_integrand(shifted, x, to_right, t) * plain.evaluate(x, to_left * to_right);
        },
        -1.0, 1.0, spec);
}

/// Positive zeros of J_n below bessel_j_max_argument, bracketed on a 0.1 grid
/// and refined by bisection.
inline std::vector<double> bessel_j_zeros(int n)
{
    const RealOrder order(n);
    std::vector<double> zeros;
    const double step = 0.1;
    double lo = step;
    double f_lo = bessel_j(order, lo);
    for (double hi = 2.0 * step; hi <= bessel_j_max_argument; hi += step) {
        const double f_hi = bessel_j(order, hi);
        if ((f_lo < 0.0) != (f_hi < 0.0)) {
            double a = lo;
            double b = hi;
            double fa = f_lo;
            for (int iter = 0; iter < 60 && b - a > 1e-14 * b; ++iter) {
                const double mid = 0.5 * (a + b);
                const double fm = bessel_j(order, mid);
                if ((fm < 0.0) == (fa < 0.0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            zeros.push_back(0.5 * (a + b));
        }
        lo = hi;
        f_lo = f_hi;
    }
    return zeros;
}

/// Segment boundaries in x at which alpha sqrt(x^2+z^2) hits a zero of J_n.
inline std::vector<double> bessel_integral_boundaries(const BesselIntegralParams& p)
{
    std::vector<double> boundaries{0.0};
    for (double j : bessel_j_zeros(p.n)) {
        const double r = j / p.alpha;
        if (r <= p.z) {
            continue;
        }
        const double x = std::sqrt((r - p.z) * (r + p.z));
        if (x > boundaries.back() * (1.0 + 1e-12) + 1e-12) {
            boundaries.push_back(x);
        }
    }
    return boundaries;
}

inline IntegralResult bessel_integral_numeric(const BesselIntegralParams& p, const QuadratureSpec& spec = {})
{
    p.validate();
    if (!p.converges()) {
        throw std::domain_error("bessel_integral_numeric: integral diverges unless n > 2m + 1/2 (n = " +
                                std::to_string(p.n) + ", m = " + std::to_string(p.m) + ")");
    }
    const std::vector<double> boundaries = bessel_integral_boundaries(p);
    if (boundaries.size() < 3) {
        throw std::range_error("bessel_integral_numeric: fewer than two oscillations inside the Bessel range");
    }
    const RealOrder order(p.n);
    auto integrand = [&p, order](double x) {
        const double r = std::hypot(x, p.z);
        return bessel_j(order, p.alpha * r) * std::pow(r, -p.n) * std::pow(x, 2.0 * p.m + 1.0);
    };
    return integrate_oscillatory_semi_infinite(integrand, boundaries, spec);
}

inline IntegralResult power_exp_integral_numeric(double m, double n, double beta, const QuadratureSpec& spec = {})
{
    (void)power_exp_integral_closed_form(m, n, beta);  // precondition check
    return integrate_semi_infinite(
        [=](double x) {
            if (x == 0.0) {
                return std::pow(x, m);
            }
            // log form so x^m * e^{-beta x^n} stays 0 rather than inf * 0 far out
            return std::exp(m * std::log(x) - beta * std::pow(x, n));
        },
        0.0, spec);
}

// ---------------------------------------------------------------------------
// Grid verification
// ---------------------------------------------------------------------------

using ParameterMap = std::map<std::string, double>;

struct VerificationRecord {
    std::string identity_name;
    ParameterMap parameters;
    double closed_form = std::numeric_limits<double>::quiet_NaN();
    double numeric = std::numeric_limits<double>::quiet_NaN();
    double abs_diff = std::numeric_limits<double>::quiet_NaN();
    double rel_diff = std::numeric_limits<double>::quiet_NaN();
    bool passed = false;
    double numeric_error_estimate = std::numeric_limits<double>::quiet_NaN();
    double abs_tol = 0.0;
    double rel_tol = 0.0;
    /// Set when the point raised an error or the quadrature did not converge.
    std::optional<std::string> note;
};

/// Raised for an unknown identity name or a grid entry missing a parameter.
class GridError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline const std::vector<std::string>& identity_names()
{
    static const std::vector<std::string> names{"norm",        "weighted-norm",   "orthogonality",
                                                "main-integral", "bessel-integral", "power-exp"};
    return names;
}

inline const std::vector<std::string>& identity_parameter_keys(std::string_view identity)
{
    static const std::map<std::string, std::vector<std::string>, std::less<>> keys{
        {"norm", {"m_prime", "n"}},
        {"weighted-norm", {"m_prime", "n"}},
        {"orthogonality", {"m_prime", "n_l", "n_k"}},
        {"main-integral", {"m_prime", "n_l", "n_k", "t"}},
        {"bessel-integral", {"n", "m", "alpha", "z"}},
        {"power-exp", {"m", "n", "beta"}},
    };
    const auto it = keys.find(identity);
    if (it == keys.end()) {
        throw GridError("unknown identity '" + std::string(identity) + "'");
    }
    return it->second;
}

namespace detail {

struct PointOutcome {
    double closed_form;
    IntegralResult numeric;
};

inline double get_real(const ParameterMap& point, const std::string& key)
{
    const auto it = point.find(key);
    if (it == point.end()) {
        throw GridError("grid entry is missing parameter '" + key + "'");
    }
    return it->second;
}

inline int get_integer(const ParameterMap& point, const std::string& key)
{
    const double v = get_real(point, key);
    if (!is_integer(v) || std::fabs(v) > 1e6) {
        throw GridError("grid parameter '" + key + "' must be an integer");
    }
    return static_cast<int>(v);
}

inline void check_entry(std::string_view identity, const ParameterMap& point)
{
    const auto& keys = identity_parameter_keys(identity);
    for (const auto& key : keys) {
        (void)get_real(point, key);
    }
    for (const auto& [key, value] : point) {
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            throw GridError("grid entry has unexpected parameter '" + key + "' for identity '" +
                            std::string(identity) + "'");
        }
    }
    for (const char* key : {"n", "n_l", "n_k"}) {
        if (point.contains(key) && !(identity == "power-exp" && std::string_view(key) == "n")) {
            (void)get_integer(point, key);
        }
    }
}

inline PointOutcome evaluate_point(std::string_view identity, const ParameterMap& point,
                                   const QuadratureSpec& spec)
{
    if (identity == "norm") {
        const PolyParams params(get_real(point, "m_prime"), get_integer(point, "n"));
        return {ualp_norm_sq(params), norm_numeric(params, spec)};
    }
    if (identity == "weighted-norm") {
        const PolyParams params(get_real(point, "m_prime"), get_integer(point, "n"));
        return {ualp_weighted_norm_sq(params), weighted_norm_numeric(params, spec)};
    }
    if (identity == "orthogonality") {
        const double m = get_real(point, "m_prime");
        const int n_l = get_integer(point, "n_l");
        const int n_k = get_integer(point, "n_k");
        return {orthogonality_closed_form(m, n_l, n_k), orthogonality_numeric(m, n_l, n_k, spec)};
    }
    if (identity == "main-integral") {
        const MainIntegralParams p{get_real(point, "m_prime"), get_integer(point, "n_l"),
                                   get_integer(point, "n_k"), get_real(point, "t")};
        return {main_integral_closed_form(p), main_integral_numeric(p, spec)};
    }
    if (identity == "bessel-integral") {
        const BesselIntegralParams p{get_integer(point, "n"), get_real(point, "m"), get_real(point, "alpha"),
                                     get_real(point, "z")};
        // Numeric first: its convergence guard is the more informative refusal.
        const IntegralResult numeric = bessel_integral_numeric(p, spec);
        return {bessel_integral_closed_form(p), numeric};
    }
    if (identity == "power-exp") {
        const double m = get_real(point, "m");
        const double n = get_real(point, "n");
        const double beta = get_real(point, "beta");
        return {power_exp_integral_closed_form(m, n, beta), power_exp_integral_numeric(m, n, beta, spec)};
    }
    throw GridError("unknown identity '" + std::string(identity) + "'");
}

}  // namespace detail

/// Checks one closed form against quadrature at every grid point, in order.
///
/// A point passes when abs_diff <= abs_tol or rel_diff <= rel_tol. Domain or
/// range errors at a point are recorded as failures and the sweep continues;
/// an unknown identity or malformed entry throws GridError before any work.
inline std::vector<VerificationRecord> verify_identity_grid(std::string_view identity_name,
                                                            const std::vector<ParameterMap>& parameter_grid,
                                                            const QuadratureSpec& spec, double abs_tol,
                                                            double rel_tol)
{
    (void)identity_parameter_keys(identity_name);
    for (const auto& point : parameter_grid) {
        detail::check_entry(identity_name, point);
    }
    if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0)) {
        throw std::invalid_argument("verify_identity_grid: tolerances must be non-negative");
    }

    std::vector<VerificationRecord> records;
    records.reserve(parameter_grid.size());
    for (const auto& point : parameter_grid) {
        VerificationRecord record;
        record.identity_name = std::string(identity_name);
        record.parameters = point;
        record.abs_tol = abs_tol;
        record.rel_tol = rel_tol;
        try {
            const detail::PointOutcome outcome = detail::evaluate_point(identity_name, point, spec);
            record.closed_form = outcome.closed_form;
            record.numeric = outcome.numeric.value;
            record.numeric_error_estimate = outcome.numeric.error_estimate;
            record.abs_diff = std::fabs(record.numeric - record.closed_form);
            if (record.closed_form != 0.0) {
                record.rel_diff = record.abs_diff / std::fabs(record.closed_form);
            } else {
                record.rel_diff = record.abs_diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
            }
            record.passed = record.abs_diff <= abs_tol || record.rel_diff <= rel_tol;
            if (!outcome.numeric.converged) {
                record.note = "quadrature did not reach the engine tolerance";
            }
        } catch (const std::exception& e) {
            record.passed = false;
            record.note = e.what();
        }
        records.push_back(std::move(record));
    }
    return records;
}

// ---------------------------------------------------------------------------
// Built-in grids
// ---------------------------------------------------------------------------

namespace grids {

inline std::vector<ParameterMap> main_integral()
{
    std::vector<ParameterMap> grid;
    for (double m : {0.0, 0.5, 1.0, 2.3}) {
        for (int n_l : {0, 1, 2, 4}) {
            for (int n_k : {0, 1, 3}) {
                for (double t : {0.1, 0.5, 0.9}) {
                    grid.push_back({{"m_prime", m}, {"n_l", n_l}, {"n_k", n_k}, {"t", t}});
                }
            }
        }
    }
    return grid;
}

inline std::vector<ParameterMap> orthogonality()
{
    std::vector<ParameterMap> grid;
    for (double m : {0.0, 1.5, 3.2}) {
        for (int n_l = 0; n_l <= 5; ++n_l) {
            for (int n_k = 0; n_k <= 5; ++n_k) {
                grid.push_back({{"m_prime", m}, {"n_l", n_l}, {"n_k", n_k}});
            }
        }
    }
    return grid;
}

inline std::vector<ParameterMap> norm()
{
    std::vector<ParameterMap> grid;
    for (double m : {0.5, 1.0, 2.3}) {
        for (int n = 0; n <= 5; ++n) {
            grid.push_back({{"m_prime", m}, {"n", n}});
        }
    }
    return grid;
}

inline std::vector<ParameterMap> bessel_integral()
{
    return {
        {{"n", 1}, {"m", 0.0}, {"alpha", 1.0}, {"z", 1.0}},
        {{"n", 2}, {"m", 0.0}, {"alpha", 1.0}, {"z", 2.0}},
        {{"n", 4}, {"m", 0.5}, {"alpha", 1.5}, {"z", 0.7}},
        {{"n", 3}, {"m", 0.0}, {"alpha", 2.0}, {"z", 1.0}},
    };
}

inline std::vector<ParameterMap> bessel_integral_with_divergent_point()
{
    auto grid = bessel_integral();
    grid.insert(grid.begin() + 1, {{"n", 1}, {"m", 1.0}, {"alpha", 1.0}, {"z", 1.0}});
    return grid;
}

/// Includes the Gaussian moments int x^(2k+1) e^(-beta x^2) for
/// (k, beta) = (0, 1), (1, 0.5), (2.5, 2).
inline std::vector<ParameterMap> power_exp()
{
    return {
        {{"m", 1.0}, {"n", 2.0}, {"beta", 1.0}},
        {{"m", 3.0}, {"n", 2.0}, {"beta", 0.5}},
        {{"m", 6.0}, {"n", 2.0}, {"beta", 2.0}},
        {{"m", 0.0}, {"n", 1.0}, {"beta", 3.0}},
        {{"m", 2.5}, {"n", 2.0}, {"beta", 0.8}},
    };
}

/// Built-in grid by identity and grid name ("default", or
/// "includes-divergent-point" for bessel-integral).
inline std::vector<ParameterMap> named(std::string_view identity, std::string_view grid_name)
{
    (void)identity_parameter_keys(identity);
    if (grid_name == "default") {
        if (identity == "main-integral") return main_integral();
        if (identity == "orthogonality") return orthogonality();
        if (identity == "norm" || identity == "weighted-norm") return norm();
        if (identity == "bessel-integral") return bessel_integral();
        if (identity == "power-exp") return power_exp();
    }
    if (grid_name == "includes-divergent-point" && identity == "bessel-integral") {
        return bessel_integral_with_divergent_point();
    }
    throw GridError("no built-in grid '" + std::string(grid_name) + "' for identity '" + std::string(identity) +
                    "'");
}

}  // namespace grids

}  // namespace ualp

#endif  // UALP_IDENTITIES_HPP
