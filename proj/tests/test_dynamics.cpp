#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "squidcouple/dynamics.hpp"
#include "squidcouple/errors.hpp"

using namespace squidcouple;
using units::pi;

namespace {

const QubitPair kPair{};

// Reference exponential through a full Hermitian eigendecomposition.
Unitary4 exp_reference(const Matrix4c& H, double t_ns)
{
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(H);
    Eigen::Vector4cd phases;
    for (int k = 0; k < 4; ++k) phases(k) = std::polar(1.0, -2.0 * pi * es.eigenvalues()(k) * t_ns);
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix2c qubit_h(double eps, double delta)
{
    return -0.5 * eps * pauli::z() - 0.5 * delta * pauli::x();
}

PulseSchedule coupler_only(double K_on, double t_on, double t_off, double total)
{
    PulseSchedule s;
    s.coupler = {t_on, t_off, K_on, 0.0, 0.5};
    s.total_duration = total;
    return s;
}

PulseSchedule driven_fragment()
{
    PulseSchedule s = coupler_only(-0.31, 2.0, 10.0, 12.0);
    s.drives[0].push_back({0.0, 2.0, 0.05, 9.485, 0.3, 0.5});
    s.drives[1].push_back({10.0, 12.0, 0.04, 3.622, -0.7, 0.5});
    return s;
}

double op_norm_diff(const Unitary4& a, const Unitary4& b)
{
    Eigen::JacobiSVD<Matrix4c> svd(a - b);
    return svd.singularValues()(0);
}

}  // namespace

TEST_CASE("Hamiltonian matches the Pauli expansion")
{
    const double e1 = 1.3, e2 = -0.4, K = -0.3;
    Matrix4c expected = -0.5 * e1 * kron(pauli::z(), pauli::identity()) -
                        0.5 * kPair.delta1_GHz * kron(pauli::x(), pauli::identity()) -
                        0.5 * e2 * kron(pauli::identity(), pauli::z()) -
                        0.5 * kPair.delta2_GHz * kron(pauli::identity(), pauli::x()) -
                        0.5 * K * kron(pauli::z(), pauli::z());
    CHECK((hamiltonian(kPair, e1, e2, K) - expected).norm() < 1e-14);
}

TEST_CASE("uncoupled Hamiltonian has the single-qubit splittings")
{
    const Matrix4c H = hamiltonian(kPair, kPair.eps1_GHz, kPair.eps2_GHz, 0.0);
    CHECK((H - H.adjoint()).norm() == 0.0);
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(H);
    Eigen::Vector4d e = es.eigenvalues();
    std::sort(e.data(), e.data() + 4);
    // Levels are (+-dE1 +- dE2) / 2 with dE1 = 9.485 and dE2 = 3.622.
    CHECK(e(3) - e(0) == doctest::Approx(9.485 + 3.622).epsilon(1e-3));
    CHECK(e(2) - e(1) == doctest::Approx(9.485 - 3.622).epsilon(1e-3));
    CHECK(e(1) - e(0) == doctest::Approx(3.622).epsilon(1e-3));
    CHECK(e(2) - e(0) == doctest::Approx(9.485).epsilon(1e-3));
}

TEST_CASE("coupler envelope")
{
    CouplerPulse p{5.0, 15.0, -0.3, 0.0, 0.5};
    CHECK(envelope(5.0, p) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(envelope(15.0, p) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(envelope(10.0, p) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(envelope(0.0, p) < 1e-12);
    CHECK(envelope(20.0, p) < 1e-12);

    // Locate the 10% and 90% crossings of the rising edge by bisection.
    auto crossing = [&](double level) {
        double lo = 3.0, hi = 7.0;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            (envelope(mid, p) < level ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    CHECK(crossing(0.9) - crossing(0.1) == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("drive envelope")
{
    DriveWindow w{1.0, 5.0, 0.1, 3.0, 0.0, 0.5};
    CHECK(drive_envelope(0.5, w) == 0.0);
    CHECK(drive_envelope(1.0, w) == 0.0);
    CHECK(drive_envelope(1.25, w) == doctest::Approx(0.5));
    CHECK(drive_envelope(3.0, w) == 1.0);
    CHECK(drive_envelope(4.75, w) == doctest::Approx(0.5));
    CHECK(drive_envelope(5.5, w) == 0.0);
}

TEST_CASE("controls include both crosstalk channels")
{
    PulseSchedule s = coupler_only(-0.3, 2.0, 8.0, 10.0);
    s.crosstalk = {5.0, +1, 0.014};
    s.drives[0].push_back({3.0, 7.0, 1.0, 0.0, 0.0, 0.0});
    const Controls on = controls_at(s, kPair, 5.0);
    CHECK(on.K_GHz == doctest::Approx(-0.3 + 0.014).epsilon(1e-9));
    CHECK(on.eps1_GHz == doctest::Approx(kPair.eps1_GHz + 1.0 - 1.5).epsilon(1e-9));
    CHECK(on.eps2_GHz == doctest::Approx(kPair.eps2_GHz - 1.5).epsilon(1e-9));

    s.drives[0].back().amplitude_GHz = -1.0;
    CHECK(controls_at(s, kPair, 5.0).K_GHz == doctest::Approx(-0.3 - 0.014).epsilon(1e-9));

    s.crosstalk.sign = -1;
    CHECK(controls_at(s, kPair, 5.0).eps2_GHz == doctest::Approx(kPair.eps2_GHz + 1.5).epsilon(1e-9));

    const Controls off = controls_at(s, kPair, 0.0);
    CHECK(std::abs(off.eps1_GHz - kPair.eps1_GHz) < 1e-6);
    CHECK(std::abs(off.K_GHz) < 1e-6);

    CHECK_THROWS_AS(controls_at(s, kPair, -0.1), OutOfRange);
    CHECK_THROWS_AS(controls_at(s, kPair, 10.1), OutOfRange);
}

TEST_CASE("schedule validation")
{
    PulseSchedule s = coupler_only(-0.3, 2.0, 8.0, 10.0);
    CHECK_NOTHROW(s.validate());
    s.coupler.t_off = 11.0;
    CHECK_THROWS_AS(s.validate(), InvalidArgument);
    s = coupler_only(-0.3, 2.0, 8.0, 10.0);
    s.drives[1].push_back({9.0, 10.5, 0.1, 1.0, 0.0, 0.5});
    CHECK_THROWS_AS(s.validate(), InvalidArgument);
}

TEST_CASE("propagation of a zero-length interval is the identity")
{
    const PulseSchedule s = driven_fragment();
    CHECK((propagate(s, kPair, 1e-3, 4.0, 4.0) - Unitary4::Identity()).norm() == 0.0);
}

TEST_CASE("uncoupled propagation factorizes")
{
    const PulseSchedule s = coupler_only(0.0, 1.0, 2.0, 3.0);
    const Unitary4 U = propagate(s, kPair, 1e-3);
    const Matrix2c H1 = qubit_h(kPair.eps1_GHz, kPair.delta1_GHz);
    const Matrix2c H2 = qubit_h(kPair.eps2_GHz, kPair.delta2_GHz);
    const Unitary4 expected = exp_reference(kron(H1, pauli::identity()) + kron(pauli::identity(), H2), 3.0);
    CHECK(op_norm_diff(U, expected) < 1e-10);
}

TEST_CASE("constant coupled Hamiltonian matches the eigendecomposition")
{
    // A coupler that stays on: the edges sit far outside the window.
    PulseSchedule s = coupler_only(-0.31, 0.0, 40.0, 40.0);
    s.coupler.edge_width = 1e-3;
    const Unitary4 U = propagate(s, kPair, 1e-3, 10.0, 20.0);
    const Unitary4 expected = exp_reference(hamiltonian(kPair, kPair.eps1_GHz, kPair.eps2_GHz, -0.31), 10.0);
    CHECK(op_norm_diff(U, expected) < 1e-9);
}

TEST_CASE("step size guard")
{
    const PulseSchedule s = driven_fragment();
    const double f_max = max_frequency(s, kPair);
    CHECK(f_max >= 9.485);
    CHECK_THROWS_AS(propagate(s, kPair, 1.01 / (40.0 * f_max)), StepTooLarge);
    CHECK_NOTHROW(propagate(s, kPair, 0.99 / (40.0 * f_max), 0.0, 0.1));
    CHECK_THROWS_AS(propagate(s, kPair, 0.0), InvalidArgument);
}

TEST_CASE("property: propagators are unitary")
{
    const PulseSchedule s = driven_fragment();
    CHECK(unitarity_defect(propagate(s, kPair, 2e-3)) < 1e-9);
    CHECK(unitarity_defect(propagate(s, kPair, 5e-4)) < 1e-9);
}

TEST_CASE("coupler fragment converges under step halving")
{
    const PulseSchedule s = coupler_only(-0.31, 1.5, 10.1, 11.6);
    const Unitary4 a = propagate(s, kPair, 2e-3);
    const Unitary4 b = propagate(s, kPair, 1e-3);
    CHECK(op_norm_diff(a, b) < 1e-6);
}

TEST_CASE("property: midpoint rule is second order")
{
    const PulseSchedule s = driven_fragment();
    const Unitary4 u1 = propagate(s, kPair, 2e-3);
    const Unitary4 u2 = propagate(s, kPair, 1e-3);
    const Unitary4 u4 = propagate(s, kPair, 5e-4);
    const double ratio = op_norm_diff(u1, u2) / op_norm_diff(u2, u4);
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("property: propagation composes over adjacent intervals")
{
    const PulseSchedule s = driven_fragment();
    const Unitary4 whole = propagate(s, kPair, 1e-3, 0.0, 6.0);
    const Unitary4 split = propagate(s, kPair, 1e-3, 3.0, 6.0) * propagate(s, kPair, 1e-3, 0.0, 3.0);
    CHECK(op_norm_diff(whole, split) < 1e-10);
}

TEST_CASE("property: propagator is continuous in the pulse amplitude")
{
    PulseSchedule s = driven_fragment();
    const Unitary4 base = propagate(s, kPair, 1e-3);
    double prev = 0.0;
    for (double d : {1e-6, 1e-5, 1e-4}) {
        PulseSchedule t = s;
        t.coupler.K_on_GHz += d;
        const double diff = op_norm_diff(base, propagate(t, kPair, 1e-3));
        CHECK(diff > prev);
        CHECK(diff < 200.0 * d);
        prev = diff;
    }
}

TEST_CASE("trace sampling")
{
    const PulseSchedule s = driven_fragment();
    const auto rows = schedule_trace(s, kPair, 0.5);
    REQUIRE(rows.size() == 25);
    CHECK(rows.front().t == 0.0);
    CHECK(rows.back().t == doctest::Approx(12.0));
    CHECK(rows[12].K == doctest::Approx(controls_at(s, kPair, 6.0).K_GHz));
    CHECK_THROWS_AS(schedule_trace(s, kPair, 0.0), InvalidArgument);
}
