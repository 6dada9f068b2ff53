#include <doctest.h>

#include <cmath>
#include <random>

#include "squidcouple/errors.hpp"
#include "squidcouple/squid.hpp"

using namespace squidcouple;
using units::pi;

namespace {

const SquidParams kRef{};

// Zero-bias working point by plain fixed-point iteration on the flux
// constraint, independent of the Newton solver.
double delta_gamma_zero_bias(double beta, double phi)
{
    double dg = pi * phi;
    for (int i = 0; i < 2000; ++i) dg = pi * (phi - 0.5 * beta * std::sin(dg));
    return dg;
}

// Ic by brute force: scan gamma_bar, solve delta_gamma by damped iteration,
// keep the largest bias.
double critical_current_scan(const SquidParams& p, double phi)
{
    const double beta = p.beta_L();
    double best = 0.0;
    for (int i = 0; i <= 20000; ++i) {
        const double gb = 0.5 * pi * i / 20000.0;
        double dg = pi * phi;
        for (int k = 0; k < 400; ++k) dg = 0.5 * dg + 0.5 * pi * (phi - 0.5 * beta * std::cos(gb) * std::sin(dg));
        best = std::max(best, 2.0 * std::cos(dg) * std::sin(gb));
    }
    return best * p.I0_uA;
}

// dJ/dPhi_s in 1/H by central difference.
double fd_transfer(const SquidParams& p, double Ib, double phi, double h = 1e-6)
{
    const double jp = solve_working_point(p, Ib, phi + h).J_uA;
    const double jm = solve_working_point(p, Ib, phi - h).J_uA;
    return (jp - jm) * 1e-6 / (2.0 * h * units::flux_quantum);
}

}  // namespace

TEST_CASE("screening parameter of the reference device")
{
    CHECK(kRef.beta_L() == doctest::Approx(0.092).epsilon(0.001 / 0.092));
    CHECK(kRef.beta_L() == doctest::Approx(2 * 200e-12 * 0.48e-6 / 2.067833848e-15).epsilon(1e-9));
    const SquidParams p = kRef.with_beta(0.2);
    CHECK(p.beta_L() == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(p.L_pH == kRef.L_pH);
}

TEST_CASE("parameter validation")
{
    CHECK_THROWS_AS((SquidParams{0.0, 5.0, 0.48}.validate()), InvalidArgument);
    CHECK_THROWS_AS((SquidParams{200.0, -1.0, 0.48}.validate()), InvalidArgument);
    CHECK_THROWS_AS((SquidParams{200.0, 5.0, 0.0}.validate()), InvalidArgument);
    CHECK_NOTHROW(kRef.validate());
    CHECK_THROWS_AS(solve_working_point(kRef, -0.01, 0.45), InvalidArgument);
}

TEST_CASE("zero bias, zero flux is the symmetric point")
{
    const WorkingPoint wp = solve_working_point(kRef, 0.0, 0.0);
    CHECK(wp.gamma_bar == 0.0);
    CHECK(wp.delta_gamma == 0.0);
    CHECK(wp.J_uA == 0.0);
}

TEST_CASE("zero bias at 0.45 flux quanta matches fixed-point iteration")
{
    const WorkingPoint wp = solve_working_point(kRef, 0.0, 0.45);
    const double dg = delta_gamma_zero_bias(kRef.beta_L(), 0.45);
    CHECK(wp.gamma_bar == 0.0);
    CHECK(wp.delta_gamma == doctest::Approx(dg).epsilon(1e-11));
    CHECK(wp.delta_gamma == doctest::Approx(1.2742).epsilon(1e-4));
    CHECK(wp.J_uA == doctest::Approx(kRef.I0_uA * std::sin(dg)).epsilon(1e-11));
    CHECK(wp.J_uA == doctest::Approx(0.4592).epsilon(1e-3));
}

TEST_CASE("J falls as the bias rises at fixed flux")
{
    const double ic = critical_current(kRef, 0.45);
    double prev = 1e9;
    for (double r : {0.0, 0.4, 0.6, 0.85}) {
        const WorkingPoint wp = solve_working_point(kRef, r * ic, 0.45);
        CHECK(wp.J_uA < prev);
        prev = wp.J_uA;
    }
}

TEST_CASE("working point residuals and bounds")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 40; ++i) {
        const double phi = -1.0 + 2.0 * U(rng);
        const double ib = 0.95 * U(rng) * critical_current(kRef, phi);
        const WorkingPoint wp = solve_working_point(kRef, ib, phi);
        CHECK(wp.residual_bias_uA < 1e-10);
        CHECK(wp.residual_flux_uA < 1e-10);
        CHECK(std::abs(wp.J_uA) <= kRef.I0_uA);
        // The static equations, checked directly.
        CHECK(std::abs(2 * kRef.I0_uA * std::cos(wp.delta_gamma) * std::sin(wp.gamma_bar) - ib) < 1e-10);
        CHECK(std::abs(kRef.I0_uA * std::cos(wp.gamma_bar) * std::sin(wp.delta_gamma) - wp.J_uA) < 1e-12);
    }
}

TEST_CASE("solver is deterministic")
{
    const double ib = 0.7 * critical_current(kRef, 0.3);
    const WorkingPoint a = solve_working_point(kRef, ib, 0.3);
    const WorkingPoint b = solve_working_point(kRef, ib, 0.3);
    CHECK(a.gamma_bar == b.gamma_bar);
    CHECK(a.delta_gamma == b.delta_gamma);
    CHECK(a.J_uA == b.J_uA);
}

TEST_CASE("bias at or above Ic has no static solution")
{
    const double ic = critical_current(kRef, 0.45);
    CHECK_THROWS_AS(solve_working_point(kRef, ic, 0.45), BeyondCritical);
    CHECK_THROWS_AS(solve_working_point(kRef, 1.01 * ic, 0.45), BeyondCritical);
    CHECK_NOTHROW(solve_working_point(kRef, 0.999 * ic, 0.45));
}

TEST_CASE("critical current against a brute-force scan")
{
    CHECK(critical_current(kRef, 0.0) == doctest::Approx(0.96).epsilon(1e-3));
    for (double phi : {0.0, 0.2, 0.45, 0.5})
        CHECK(critical_current(kRef, phi) == doctest::Approx(critical_current_scan(kRef, phi)).epsilon(1e-6));
}

TEST_CASE("critical current symmetry, periodicity and minimum at half flux")
{
    CHECK(std::abs(critical_current(kRef, 0.3) - critical_current(kRef, -0.3)) < 1e-12);
    CHECK(critical_current(kRef, 1.3) == doctest::Approx(critical_current(kRef, 0.3)).epsilon(1e-12));
    const double half = critical_current(kRef, 0.5);
    for (int i = 0; i <= 40; ++i) CHECK(critical_current(kRef, i / 40.0) >= half);
}

TEST_CASE("transfer function at zero phases")
{
    const WorkingPoint wp = solve_working_point(kRef, 0.0, 0.0);
    const double Lj0 = units::flux_quantum / (2 * pi * kRef.I0_uA * 1e-6);
    CHECK(Lj0 == doctest::Approx(685.7e-12).epsilon(1e-3));
    const double L = kRef.L_pH * 1e-12;
    const double expected = (1 / (2 * Lj0)) / (1 + L / (2 * Lj0));
    CHECK(re_transfer_function(kRef, wp) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(re_transfer_function(kRef, wp) == doctest::Approx(6.36e8).epsilon(2e-3));
    CHECK(re_transfer_smallbeta(kRef, wp) == doctest::Approx(1 / (2 * Lj0)).epsilon(1e-12));
    CHECK(re_transfer_smallbeta(kRef, wp) == doctest::Approx(7.29e8).epsilon(2e-3));
    CHECK(josephson_inductance(kRef, wp) == doctest::Approx(Lj0).epsilon(1e-12));
}

TEST_CASE("transfer function at 0.45 flux quanta")
{
    const WorkingPoint wp = solve_working_point(kRef, 0.0, 0.45);
    const double T = re_transfer_function(kRef, wp);
    CHECK(T == doctest::Approx(fd_transfer(kRef, 0.0, 0.45)).epsilon(1e-5));
    CHECK(T == doctest::Approx(2.05e8).epsilon(0.01));
    CHECK(re_transfer_smallbeta(kRef, wp) / T == doctest::Approx(1.043).epsilon(2e-3));
}

TEST_CASE("transfer function vanishes where tan(dg) tan(gb) = 1")
{
    WorkingPoint wp;
    wp.delta_gamma = 1.1;
    wp.gamma_bar = std::atan(1.0 / std::tan(1.1));
    const double scale = re_transfer_smallbeta(kRef, solve_working_point(kRef, 0.0, 0.0));
    CHECK(std::abs(re_transfer_function(kRef, wp)) < 1e-14 * scale);
    CHECK(std::abs(re_transfer_smallbeta(kRef, wp)) < 1e-14 * scale);
}

TEST_CASE("transfer function turns negative at high bias")
{
    const double ic = critical_current(kRef, 0.45);
    const WorkingPoint wp = solve_working_point(kRef, 0.85 * ic, 0.45);
    CHECK(std::tan(wp.delta_gamma) * std::tan(wp.gamma_bar) > 1.0);
    CHECK(re_transfer_smallbeta(kRef, wp) < 0.0);
    CHECK(re_transfer_function(kRef, wp) < 0.0);
}

TEST_CASE("singular phases are rejected")
{
    WorkingPoint wp;
    wp.gamma_bar = 0.5 * pi;
    wp.delta_gamma = 0.3;
    CHECK_THROWS_AS(re_transfer_function(kRef, wp), SingularPhase);
    CHECK_THROWS_AS(re_transfer_smallbeta(kRef, wp), SingularPhase);
    CHECK_THROWS_AS(josephson_inductance(kRef, wp), SingularPhase);
}

TEST_CASE("property: finite differences agree with the closed-form transfer function")
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double phi = 0.02 + 0.46 * U(rng);
        const double ib = 0.9 * U(rng) * critical_current(kRef, phi);
        const WorkingPoint wp = solve_working_point(kRef, ib, phi);
        const double T = re_transfer_function(kRef, wp);
        const double fd = fd_transfer(kRef, ib, phi);
        INFO("phi = " << phi << ", Ib = " << ib);
        CHECK(std::abs(fd - T) < 1e-4 * std::abs(T));
    }
}

TEST_CASE("property: no branch jumps along a bias sweep")
{
    for (double phi : {0.1, 0.3, 0.45}) {
        const double ic = critical_current(kRef, phi);
        WorkingPoint prev = solve_working_point(kRef, 0.0, phi);
        for (int i = 1; i <= 100; ++i) {
            const WorkingPoint wp = solve_working_point(kRef, 0.95 * ic * i / 100.0, phi);
            CHECK(std::abs(wp.gamma_bar - prev.gamma_bar) < 0.2);
            CHECK(std::abs(wp.delta_gamma - prev.delta_gamma) < 0.2);
            prev = wp;
        }
    }
}

TEST_CASE("property: zero bias keeps gamma_bar at zero, J is flux periodic")
{
    for (double phi : {-0.7, -0.2, 0.1, 0.33, 0.49}) {
        CHECK(solve_working_point(kRef, 0.0, phi).gamma_bar == 0.0);
        const double ib = 0.5 * critical_current(kRef, phi);
        CHECK(solve_working_point(kRef, ib, phi).J_uA ==
              doctest::Approx(solve_working_point(kRef, ib, phi + 1.0).J_uA).epsilon(1e-12));
    }
}

namespace {

double max_smallbeta_deviation(const SquidParams& p, double max_ratio)
{
    double worst = 0.0;
    for (int i = 0; i <= 9; ++i) {
        const double phi = 0.45 * i / 9.0;
        const double ic = critical_current(p, phi);
        for (int k = 0; k <= 20; ++k) {
            const WorkingPoint wp = solve_working_point(p, max_ratio * ic * k / 20.0, phi);
            const double full = re_transfer_function(p, wp);
            const double small = re_transfer_smallbeta(p, wp);
            if (std::abs(full) < 1e-3 * re_transfer_smallbeta(p, solve_working_point(p, 0.0, 0.0))) continue;
            worst = std::max(worst, std::abs(small - full) / std::abs(full));
        }
    }
    return worst;
}

}  // namespace

// Relative to the full form the gap is x = (pi beta/2) cos(gb) cos(dg) (1 - t^2)
// with t = tan(dg) tan(gb). At zero phases x = (pi/2) beta_L exactly, and near
// 0.85 Ic at 0.45 flux quanta it reaches about 2.6 beta_L.
TEST_CASE("property: small-beta gap is at most (pi/2) beta_L up to the decoupling bias")
{
    CHECK(max_smallbeta_deviation(kRef, 0.57) <= 0.5 * pi * kRef.beta_L() * (1 + 1e-9));
}

TEST_CASE("property: small-beta gap within 1.5 beta_L up to 0.85 Ic" * doctest::should_fail())
{
    CHECK(max_smallbeta_deviation(kRef, 0.85) <= 1.5 * kRef.beta_L());
}

TEST_CASE("property: small-beta gap is first order in beta_L")
{
    CHECK(max_smallbeta_deviation(kRef, 0.85) <= 3.0 * kRef.beta_L());
    const double full = max_smallbeta_deviation(kRef, 0.57);
    const double half = max_smallbeta_deviation(kRef.with_beta(0.5 * kRef.beta_L()), 0.57);
    CHECK(full / half == doctest::Approx(2.0).epsilon(0.1));
}
