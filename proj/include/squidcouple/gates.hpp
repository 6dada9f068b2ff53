// gates.hpp: Local-equivalence analysis of two-qubit gates
//
// Weyl coordinates follow the convention U ~ exp(i/2 (c1 XX + c2 YY + c3 ZZ)),
// so CNOT sits at [pi/2, 0, 0]. Canonical points satisfy
// pi/2 >= c1 >= c2 >= c3 >= 0; mirror-image classes share a point.

#pragma once

#include <array>
#include <span>
#include <vector>

#include "squidcouple/coupler.hpp"
#include "squidcouple/linalg.hpp"

namespace squidcouple {

struct WeylPoint {
    double c1{0.0}, c2{0.0}, c3{0.0};

    Eigen::Vector3d vec() const { return {c1, c2, c3}; }
};

struct MakhlinInvariants {
    double g1{0.0};  // Re G1
    double g2{0.0};  // Im G1
    double g3{0.0};  // G2
};

Unitary4 cnot_matrix(bool control_is_qubit1 = true);

/// Throws NotUnitary when the unitarity defect exceeds tol.
void require_unitary(const Unitary4& U, double tol = 1e-8);

/// Folds an arbitrary coordinate triple into the canonical chamber.
WeylPoint canonicalize(double c1, double c2, double c3);

/// Canonical Weyl point of U (determinant phase removed first).
WeylPoint weyl_coordinates(const Unitary4& U);

MakhlinInvariants makhlin_invariants(const Unitary4& U);

/// Closed-form invariants of a Weyl point.
MakhlinInvariants invariants_from_weyl(const WeylPoint& p);

/// Parameters of the constant-coupling trajectory
/// [c1, c2, c3] = [2 pi K v t, p |sin w t|, p |sin w t|].
struct TrajectoryParams {
    double v;          // eps1 eps2 / (dE1 dE2)
    double omega;      // (dE1 - dE2)/2 in rad/ns
    double dE1_GHz;
    double dE2_GHz;

    /// n pi / |omega|, ns.
    double t_K(int n) const;
    /// Coupling that puts c1 = pi/2 at t_K(n), GHz; magnitude |omega| / (4 pi n v).
    double K_for(int n, double sign = -1.0) const;
};

TrajectoryParams trajectory_params(const QubitPair& qp);

/// Analytic curve with p = 0 (c2 = c3 = 0); c1 carries the sign of K.
WeylPoint analytic_trajectory(const QubitPair& qp, double K_GHz, double t_ns);

/// Continuous c1 along a sampled family: undoes the folds at 0 and pi/2 that
/// canonicalization introduces.
std::vector<double> unfold_c1(std::span<const double> canonical_c1);

/// min over phi of max_ij |exp(i phi) U_ij - target_ij|.
double computational_deviation(const Unitary4& U, const Unitary4& target);

/// Euclidean distance from weyl_coordinates(U) to the nearest chamber image
/// of target.
double weyl_distance(const Unitary4& U, const WeylPoint& target);
double weyl_distance(const WeylPoint& p, const WeylPoint& target);

struct GateReport {
    Unitary4 matrix{Unitary4::Identity()};
    WeylPoint weyl;
    MakhlinInvariants invariants;
    double deviation{0.0};        // against the target, computational basis
    double weyl_distance{0.0};    // against the target's Weyl point
    double unitarity_defect{0.0};
};

GateReport make_gate_report(const Unitary4& U, const Unitary4& target);

}  // namespace squidcouple
