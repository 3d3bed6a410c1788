#include <doctest.h>

#include <cmath>
#include <limits>

#include "walkdet/errors.hpp"
#include "walkdet/graphs.hpp"
#include "walkdet/ldp.hpp"

using namespace walkdet;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

MarkovChain two_state() {
    Eigen::MatrixXd p(2, 2);
    p << 0.9, 0.1, 0.5, 0.5;
    return spectral::validate_chain(p);
}

}  // namespace

TEST_CASE("s(-H) = H with minimizer t = 1") {
    auto c = two_state();
    const double h = spectral::entropy_rate(c);
    ldp::EntropyDensity d(c);
    auto pt = d.at(-h);
    CHECK(pt.s == doctest::Approx(h).epsilon(1e-8));
    REQUIRE(pt.t_star);
    CHECK(*pt.t_star == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("s at the t=0 slope equals log lambda_0") {
    auto c = two_state();
    ldp::EntropyDensity d(c);
    const double rho0 = spectral::log_lambda_deriv(c, 0.0);
    auto pt = d.at(rho0);
    CHECK(pt.s == doctest::Approx(d.log_lambda0()).epsilon(1e-8));
    REQUIRE(pt.t_star);
    CHECK(std::abs(*pt.t_star) < 1e-4);
}

TEST_CASE("s is the Legendre infimum: s(rho) <= log lambda_t - t rho, tight at t*") {
    auto c = two_state();
    ldp::EntropyDensity d(c);
    spectral::PerronSolver solver(c);
    auto r = d.range();
    for (int i = 1; i < 8; ++i) {
        const double rho = r.rho_min + (r.rho_max - r.rho_min) * i / 8.0;
        auto pt = d.at(rho);
        REQUIRE(pt.t_star);
        for (double t : {-6.0, -2.0, -0.5, 0.0, 0.7, 1.0, 2.0, 5.0})
            CHECK(pt.s <= solver.log_lambda(t) - t * rho + 1e-9);
        CHECK(pt.s ==
              doctest::Approx(solver.log_lambda(*pt.t_star) - *pt.t_star * rho).epsilon(1e-8));
    }
}

TEST_CASE("outside the cycle-mean range the density is -inf") {
    auto c = two_state();
    ldp::EntropyDensity d(c);
    auto r = d.range();
    CHECK(d.at(r.rho_min - 0.05).s == -kInf);
    CHECK(d.at(r.rho_max + 0.05).s == -kInf);
}

TEST_CASE("uniform regular walk degenerates to a single point") {
    auto c = graphs::uniform_walk_chain(graphs::gen_cycle(101));
    ldp::EntropyDensity d(c);
    const double rho = -std::log(2.0);
    CHECK(d.range().rho_min == doctest::Approx(rho).epsilon(1e-14));
    CHECK(d.range().rho_max == doctest::Approx(rho).epsilon(1e-14));
    CHECK(d.at(rho).s == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(d.at(rho + 0.01).s == -kInf);
    CHECK(d.at(rho - 0.01).s == -kInf);

    auto curve = ldp::entropy_curve(c);
    CHECK(curve.rho_grid.size() == 1);
}

TEST_CASE("rate functions and their domain boundary") {
    auto c = two_state();
    ldp::EntropyDensity d(c);
    const double h = spectral::entropy_rate(c);
    const double l0 = d.log_lambda0();

    CHECK(d.rate1(-h) == doctest::Approx(l0 - h).epsilon(1e-8));
    CHECK(d.rate1(-h) >= 0.0);

    // The pair (-H, sqrt(2H)) sits on the domain boundary; just inside the
    // rate approaches log lambda_0 and s(rho, xi) approaches zero.
    auto on = d.rate2(-h, std::sqrt(2.0 * h) - 1e-4);
    CHECK(on.i_value == doctest::Approx(l0).epsilon(1e-3));
    CHECK(std::abs(on.s2_value) < 1e-3);
    auto off = d.rate2(-h, std::sqrt(2.0 * h) + 0.05);
    CHECK(off.i_value == kInf);
    CHECK(off.s2_value == -kInf);

    auto mid = d.rate2(-h, 0.3);
    CHECK(mid.i_value == doctest::Approx(d.rate1(-h) + 0.045).epsilon(1e-8));
    CHECK(mid.s2_value == doctest::Approx(h - 0.045).epsilon(1e-8));
}

TEST_CASE("entropy_curve spans the range with matching free-function values") {
    auto c = two_state();
    auto curve = ldp::entropy_curve(c, 21);
    REQUIRE(curve.rho_grid.size() == 23);
    CHECK(curve.rho_grid.front() == doctest::Approx(ldp::EntropyDensity(c).range().rho_min));
    for (std::size_t i = 1; i < curve.rho_grid.size(); ++i)
        CHECK(curve.rho_grid[i] > curve.rho_grid[i - 1]);
    CHECK(curve.s_values[11] ==
          doctest::Approx(ldp::entropy_density(c, curve.rho_grid[11]).s).epsilon(1e-10));
}

TEST_CASE("path measure enumeration on the triangle") {
    auto c = graphs::uniform_walk_chain(graphs::gen_cycle(3));
    auto meas = ldp::enumerate_path_measure(c, 12, 99);
    CHECK(meas.n == 12);
    CHECK(meas.points.size() == 3 * 2048);  // 3 * 2^11 allowed paths
    const double rho = (std::log(1.0 / 3.0) + 11.0 * std::log(0.5)) / 12.0;
    for (std::size_t i = 0; i < meas.points.size(); i += 500)
        CHECK(meas.points[i].first == doctest::Approx(rho).epsilon(1e-12));

    auto again = ldp::enumerate_path_measure(c, 12, 99);
    CHECK(meas.points == again.points);
    auto other = ldp::enumerate_path_measure(c, 12, 100);
    CHECK(meas.points != other.points);

    CHECK_THROWS_AS(ldp::enumerate_path_measure(c, 40, 1), TooManyPathsError);
}
