// gates.cpp

#include "squidcouple/gates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "squidcouple/errors.hpp"

namespace squidcouple {

namespace {

using units::pi;

const Matrix4c& magic_basis()
{
    static const Matrix4c Q = [] {
        const cplx i(0.0, 1.0);
        Matrix4c q;
        q << 1, 0, 0, i,
             0, i, 1, 0,
             0, i, -1, 0,
             1, 0, 0, -i;
        return Matrix4c(q / std::sqrt(2.0));
    }();
    return Q;
}

Matrix4c gamma_matrix(const Unitary4& U)
{
    const Matrix4c UB = magic_basis().adjoint() * U * magic_basis();
    return UB.transpose() * UB;
}

double fold(double c)
{
    double r = std::fmod(c, pi);
    if (r < 0.0) r += pi;
    if (r > 0.5 * pi) r = pi - r;
    return r;
}

}  // namespace

Unitary4 cnot_matrix(bool control_is_qubit1)
{
    Unitary4 U = Unitary4::Zero();
    if (control_is_qubit1) {
        U(0, 0) = U(1, 1) = 1.0;
        U(2, 3) = U(3, 2) = 1.0;
    } else {
        // |00>,|01>,|10>,|11>: flips qubit 1 when qubit 2 is |1>.
        U(0, 0) = U(2, 2) = 1.0;
        U(1, 3) = U(3, 1) = 1.0;
    }
    return U;
}

void require_unitary(const Unitary4& U, double tol)
{
    const double defect = unitarity_defect(U);
    if (!(defect <= tol)) throw NotUnitary("matrix is not unitary (defect " + std::to_string(defect) + ")");
}

WeylPoint canonicalize(double c1, double c2, double c3)
{
    std::array<double, 3> c{fold(c1), fold(c2), fold(c3)};
    std::sort(c.begin(), c.end(), std::greater<>());
    return {c[0], c[1], c[2]};
}

WeylPoint weyl_coordinates(const Unitary4& U)
{
    require_unitary(U);
    const cplx det = U.determinant();
    const Unitary4 V = U * std::polar(1.0, -std::arg(det) / 4.0);
    Eigen::ComplexEigenSolver<Matrix4c> es(gamma_matrix(V), false);
    std::array<double, 4> theta;
    for (int k = 0; k < 4; ++k) theta[k] = std::arg(es.eigenvalues()(k));
    std::sort(theta.begin(), theta.end(), std::greater<>());

    // Representatives with zero sum; the eigenvalue product is 1.
    const double total = theta[0] + theta[1] + theta[2] + theta[3];
    const long s = std::lround(total / (2.0 * pi));
    for (long k = 0; k < std::abs(s); ++k) {
        if (s > 0) theta[k] -= 2.0 * pi;
        else theta[3 - k] += 2.0 * pi;
    }
    return canonicalize(0.5 * (theta[0] + theta[1]), 0.5 * (theta[0] + theta[2]),
                        0.5 * (theta[1] + theta[2]));
}

MakhlinInvariants makhlin_invariants(const Unitary4& U)
{
    require_unitary(U);
    const Matrix4c m = gamma_matrix(U);
    const cplx det = U.determinant();
    const cplx tr = m.trace();
    const cplx tr2 = (m * m).trace();
    const cplx G1 = tr * tr / (16.0 * det);
    const cplx G2 = (tr * tr - tr2) / (4.0 * det);
    return {G1.real(), G1.imag(), G2.real()};
}

MakhlinInvariants invariants_from_weyl(const WeylPoint& p)
{
    const double c1 = std::cos(p.c1), c2 = std::cos(p.c2), c3 = std::cos(p.c3);
    const double s1 = std::sin(p.c1), s2 = std::sin(p.c2), s3 = std::sin(p.c3);
    const double cc = c1 * c1 * c2 * c2 * c3 * c3;
    const double ss = s1 * s1 * s2 * s2 * s3 * s3;
    MakhlinInvariants g;
    g.g1 = cc - ss;
    g.g2 = 0.25 * std::sin(2 * p.c1) * std::sin(2 * p.c2) * std::sin(2 * p.c3);
    g.g3 = 4.0 * cc - 4.0 * ss - std::cos(2 * p.c1) * std::cos(2 * p.c2) * std::cos(2 * p.c3);
    return g;
}

double TrajectoryParams::t_K(int n) const { return n * pi / std::abs(omega); }

double TrajectoryParams::K_for(int n, double sign) const
{
    return std::copysign(std::abs(omega) / (4.0 * pi * n * v), sign);
}

TrajectoryParams trajectory_params(const QubitPair& qp)
{
    TrajectoryParams p{};
    p.dE1_GHz = std::hypot(qp.eps1_GHz, qp.delta1_GHz);
    p.dE2_GHz = std::hypot(qp.eps2_GHz, qp.delta2_GHz);
    p.v = qp.eps1_GHz * qp.eps2_GHz / (p.dE1_GHz * p.dE2_GHz);
    p.omega = pi * (p.dE1_GHz - p.dE2_GHz);
    return p;
}

WeylPoint analytic_trajectory(const QubitPair& qp, double K_GHz, double t_ns)
{
    const TrajectoryParams p = trajectory_params(qp);
    return {2.0 * pi * K_GHz * p.v * t_ns, 0.0, 0.0};
}

std::vector<double> unfold_c1(std::span<const double> canonical_c1)
{
    std::vector<double> out;
    out.reserve(canonical_c1.size());
    // The true coordinate x maps to fold(x) and moves smoothly between
    // samples. Extrapolate linearly from the last two unfolded values and pick
    // the preimage closest to that prediction; a nearest-to-previous rule
    // takes the wrong branch right after every fold.
    for (std::size_t i = 0; i < canonical_c1.size(); ++i) {
        const double c = canonical_c1[i];
        if (i == 0) {
            out.push_back(c);
            continue;
        }
        const double guess = i >= 2 ? 2.0 * out[i - 1] - out[i - 2] : out[i - 1];
        double best = c, best_gap = std::numeric_limits<double>::infinity();
        const long base = std::lround(guess / pi);
        for (long k = base - 1; k <= base + 1; ++k) {
            for (double cand : {k * pi + c, k * pi - c}) {
                const double gap = std::abs(cand - guess);
                if (gap < best_gap) {
                    best_gap = gap;
                    best = cand;
                }
            }
        }
        out.push_back(best);
    }
    return out;
}

double computational_deviation(const Unitary4& U, const Unitary4& target)
{
    require_unitary(U);
    require_unitary(target);
    auto cost = [&](double phi) {
        return (std::polar(1.0, phi) * U - target).cwiseAbs().maxCoeff();
    };
    constexpr int kGrid = 720;
    const double step = 2.0 * pi / kGrid;
    std::vector<std::pair<double, int>> samples;
    samples.reserve(kGrid);
    for (int k = 0; k < kGrid; ++k) samples.emplace_back(cost(k * step), k);
    std::partial_sort(samples.begin(), samples.begin() + 4, samples.end());

    double best = samples.front().first;
    const double inv_gr = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int s = 0; s < 4; ++s) {
        double lo = (samples[s].second - 1) * step, hi = (samples[s].second + 1) * step;
        double x1 = hi - inv_gr * (hi - lo), x2 = lo + inv_gr * (hi - lo);
        double f1 = cost(x1), f2 = cost(x2);
        while (hi - lo > 1e-10) {
            if (f1 < f2) {
                hi = x2; x2 = x1; f2 = f1;
                x1 = hi - inv_gr * (hi - lo); f1 = cost(x1);
            } else {
                lo = x1; x1 = x2; f1 = f2;
                x2 = lo + inv_gr * (hi - lo); f2 = cost(x2);
            }
        }
        best = std::min({best, f1, f2});
    }
    return best;
}

double weyl_distance(const WeylPoint& p, const WeylPoint& target)
{
    const Eigen::Vector3d x = p.vec();
    std::array<double, 3> t{target.c1, target.c2, target.c3};
    std::sort(t.begin(), t.end());
    double best = std::numeric_limits<double>::infinity();
    do {
        for (int signs = 0; signs < 8; ++signs) {
            for (int shift = 0; shift < 27; ++shift) {
                Eigen::Vector3d img;
                int code = shift;
                for (int k = 0; k < 3; ++k) {
                    const double sgn = (signs >> k) & 1 ? -1.0 : 1.0;
                    img(k) = sgn * t[k] + pi * ((code % 3) - 1);
                    code /= 3;
                }
                best = std::min(best, (img - x).norm());
            }
        }
    } while (std::next_permutation(t.begin(), t.end()));
    return best;
}

double weyl_distance(const Unitary4& U, const WeylPoint& target)
{
    return weyl_distance(weyl_coordinates(U), target);
}

GateReport make_gate_report(const Unitary4& U, const Unitary4& target)
{
    GateReport r;
    r.matrix = U;
    r.unitarity_defect = unitarity_defect(U);
    r.weyl = weyl_coordinates(U);
    r.invariants = makhlin_invariants(U);
    r.deviation = computational_deviation(U, target);
    r.weyl_distance = weyl_distance(r.weyl, weyl_coordinates(target));
    return r;
}

}  // namespace squidcouple
