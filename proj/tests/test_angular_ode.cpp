#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "ualp/angular_ode.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<double> uniform_theta_grid(int count)
{
    const double lo = 0.1;
    const double hi = std::numbers::pi - 0.1;
    std::vector<double> grid;
    for (int i = 0; i < count; ++i) {
        grid.push_back(lo + (hi - lo) * i / (count - 1));
    }
    return grid;
}

}  // namespace

TEST_CASE("effective_order", "[ode]")
{
    CHECK(ualp::effective_order({0.0, 2}) == 2.0);
    CHECK(ualp::effective_order({3.0, 1}) == 2.0);
    CHECK(ualp::effective_order({-1.0, 1}) == 0.0);
    CHECK_THAT(ualp::effective_order({4.29, 1}), WithinRel(2.3, 1e-15));
    for (int m = 0; m <= 12; ++m) {
        CHECK(ualp::effective_order({0.0, m}) == static_cast<double>(m));
    }
    CHECK_THROWS_AS(ualp::effective_order({-1.5, 1}), std::domain_error);
    CHECK_THROWS_AS(ualp::effective_order({0.0, -1}), std::domain_error);
}

TEST_CASE("angular_eigenvalue", "[ode]")
{
    CHECK(ualp::angular_eigenvalue(0.0, 1) == 2.0);
    CHECK(ualp::angular_eigenvalue(2.0, 0) == 6.0);
    CHECK_THAT(ualp::angular_eigenvalue(1.5, 2), WithinRel(15.75, 1e-15));
    for (double m : {0.0, 0.4, 2.3}) {
        for (int n = 0; n < 20; ++n) {
            CHECK(ualp::angular_eigenvalue(m, n + 1) > ualp::angular_eigenvalue(m, n));
        }
    }
}

TEST_CASE("ode_residual on exact solutions", "[ode]")
{
    const auto grid = uniform_theta_grid(50);
    CHECK(ualp::ode_residual({0.0, 1}, grid) <= 1e-6);
    CHECK(ualp::ode_residual({1.0, 0}, grid) <= 1e-6);
    CHECK(ualp::ode_residual({2.3, 3}, grid) <= 1e-5);
    CHECK(ualp::ode_residual({ualp::effective_order({4.29, 1}), 3}, grid) <= 1e-5);
}

TEST_CASE("ode_residual detects a wrong eigenvalue", "[ode]")
{
    // H for l' = 3.3 does not solve the equation with lambda for l' = 3.3 + 1:
    // compare the residual of a mismatched pair through a shifted order.
    const auto grid = uniform_theta_grid(50);
    const ualp::UalpSeries wrong(ualp::PolyParams(1.3, 2));
    const double lambda = ualp::angular_eigenvalue(1.3, 3);
    double worst = 0.0;
    for (double theta : grid) {
        auto h = [&](double th) {
            const double s = std::sin(th);
            return wrong.evaluate(std::cos(th), s * s);
        };
        const auto d = ualp::detail::richardson_derivatives(h, theta, 1e-4);
        const double s = std::sin(theta);
        worst = std::max(worst, std::fabs(d.second + std::cos(theta) / s * d.first + (lambda - 1.69 / (s * s)) * h(theta)));
    }
    CHECK(worst > 1e-2);
}

TEST_CASE("ode_residual rejects grids touching the poles", "[ode]")
{
    const std::vector<double> near_zero{0.01, 1.0};
    const std::vector<double> near_pi{1.0, std::numbers::pi - 0.01};
    CHECK_THROWS_AS(ualp::ode_residual({1.0, 1}, near_zero), std::domain_error);
    CHECK_THROWS_AS(ualp::ode_residual({1.0, 1}, near_pi), std::domain_error);
    CHECK(ualp::ode_residual({1.0, 1}, std::vector<double>{}) == 0.0);
}
