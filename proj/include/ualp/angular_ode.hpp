#ifndef UALP_ANGULAR_ODE_HPP
#define UALP_ANGULAR_ODE_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>

#include "ualp/polynomial.hpp"

namespace ualp {

/// Ring-shaped barrier strength b and azimuthal quantum number m. The
/// angular equation then carries the effective order m' = sqrt(b + m^2).
struct RingPotentialParams {
    double b = 0.0;
    int m = 0;
};

inline double effective_order(const RingPotentialParams& p)
{
    detail::require_finite(p.b, "effective_order");
    if (p.m < 0) {
        throw std::domain_error("effective_order: m must be non-negative");
    }
    const double m_sq = static_cast<double>(p.m) * p.m;
    if (p.b < -m_sq) {
        throw std::domain_error("effective_order: requires b >= -m^2");
    }
    return std::sqrt(p.b + m_sq);
}

/// lambda = l'(l'+1), l' = m' + n.
inline double angular_eigenvalue(double m_prime, int n)
{
    const PolyParams params(m_prime, n);
    return params.l_prime() * (params.l_prime() + 1.0);
}

namespace detail {

inline constexpr double ode_step = 1e-4;
inline constexpr double ode_min_pole_distance = 0.05;

struct ThetaDerivatives {
    double first;
    double second;
};

/// Central differences at h and h/2 combined by one Richardson step.
template <typename F>
ThetaDerivatives richardson_derivatives(const F& h_of_theta, double theta, double h)
{
    auto central = [&](double step) {
        const double plus = h_of_theta(theta + step);
        const double minus = h_of_theta(theta - step);
        const double mid = h_of_theta(theta);
        return ThetaDerivatives{(plus - minus) / (2.0 * step), (plus - 2.0 * mid + minus) / (step * step)};
    };
    const ThetaDerivatives coarse = central(h);
    const ThetaDerivatives fine = central(0.5 * h);
    return {(4.0 * fine.first - coarse.first) / 3.0, (4.0 * fine.second - coarse.second) / 3.0};
}

}  // namespace detail

/// Normalized max residual of
///   (1/sin th) d/dth (sin th dH/dth) + (lambda - m'^2/sin^2 th) H = 0
/// for H(th) = P_{l'}^{m'}(cos th), lambda = l'(l'+1). The residual is divided by
/// max(1, max|H|, lambda max|H|) over the grid.
inline double ode_residual(PolyParams params, std::span<const double> theta_grid)
{
    const double pi = std::numbers::pi;
    for (double theta : theta_grid) {
        if (!(theta >= detail::ode_min_pole_distance && theta <= pi - detail::ode_min_pole_distance)) {
            throw std::domain_error("ode_residual: theta = " + std::to_string(theta) +
                                    " is closer than 0.05 rad to a pole");
        }
    }
    const UalpSeries series(params);
    auto h_of_theta = [&series](double theta) {
        const double s = std::sin(theta);
        return series.evaluate(std::cos(theta), s * s);
    };
    const double lambda = angular_eigenvalue(params.m_prime(), params.n());
    const double m_sq = params.m_prime() * params.m_prime();

    double max_h = 0.0;
    double max_raw = 0.0;
    for (double theta : theta_grid) {
        const double h = h_of_theta(theta);
        const auto d = detail::richardson_derivatives(h_of_theta, theta, detail::ode_step);
        const double s = std::sin(theta);
        const double lhs = d.second + (std::cos(theta) / s) * d.first + (lambda - m_sq / (s * s)) * h;
        max_h = std::max(max_h, std::fabs(h));
        max_raw = std::max(max_raw, std::fabs(lhs));
    }
    return max_raw / std::max({1.0, max_h, lambda * max_h});
}

}  // namespace ualp

#endif  // UALP_ANGULAR_ODE_HPP
