#ifndef KCOMPAT_QUBIT_ANALYTIC_HPP
#define KCOMPAT_QUBIT_ANALYTIC_HPP

#include <array>
#include <vector>

#include "kcompat/observables.hpp"
#include "kcompat/operator_core.hpp"

namespace kc::qubit {

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix pauli(char axis);

/// Noise parameters of the triple X_a, Y_b, Z_c; 1-a etc. are the noise
/// intensities.
struct NoisySpinTriple {
    double a, b, c;
};

/// Parameters (alpha, beta) of the covariant symmetric two-copy joint
/// observable; valid on the polytope alpha, beta >= 0, alpha + beta <= 3/8.
struct CovariantParams {
    double alpha, beta;
    bool valid() const;
};

/// Mixing weights and angles of the randomized two-copy construction.
/// The angles are named angA/angB/angC to keep them apart from the
/// covariant alpha/beta.
struct MixingParams {
    double lambda1, lambda2, lambda3;
    double angA, angB, angC;
    bool valid() const;
};

/// Two-outcome observable with effects (I +- t sigma_axis) / 2 on
/// outcomes {"+1", "-1"}.
Observable noisy_spin(char axis, double t);

/// Busch criterion for orthogonal noisy pairs: a^2 + b^2 <= 1.
bool busch_pair_compatible(double a, double b);

/// Busch criterion for the orthogonal triple: a^2 + b^2 + c^2 <= 1.
bool busch_triple_compatible(double a, double b, double c);

/// Optimal joint observable of two orthogonal noisy qubit observables on
/// the Busch circle a^2 + b^2 = 1: G(x,y) = (I + x a sigma_i + y b sigma_j)/4.
Observable busch_pair_joint(char axis1, double a, char axis2, double b);

/// The three sufficient-condition inequalities for 2-compatibility by
/// randomized mixing of sharp/pairwise-joint measurements.
bool mixing_bound_feasible(const NoisySpinTriple& triple, const MixingParams& params);

/// The mixing construction's two-copy joint observable on {+-1}^3; its
/// marginals reproduce the noisy triple at the equality values of the
/// mixing inequalities.
Observable mixing_joint_observable(const MixingParams& params);

/// Noise parameters reached with equality by the mixing construction.
NoisySpinTriple mixing_equality_targets(const MixingParams& params);

/// Effect of the covariant symmetric two-copy joint observable at a cube
/// vertex u in {+-1}^3.
HermitianOperator covariant_effect(const CovariantParams& params,
                                   const std::array<int, 3>& u);

/// The covariant observable on all eight cube vertices, outcome labels
/// "x|y|z" with x,y,z in {+1,-1}.
Observable covariant_observable(const CovariantParams& params);

/// The noise parameter of the covariant observable's marginals:
/// a = 4 (alpha - beta) / sqrt(3).
double covariant_marginal_noise(const CovariantParams& params);

/// sqrt(3)/2, as the maximum of covariant_marginal_noise over the
/// parameter polytope (attained at alpha = 3/8, beta = 0).
double two_copy_threshold_analytic();

/// The commutant operator family used to classify covariant effects.
struct MpqOperators {
    HermitianOperator m0, m1, m2, m3, m4, m5;
    HermitianOperator p_plus, p_minus, q_plus, q_minus;
};

MpqOperators mpq_operators();

/// One octahedron-group element: a vertex permutation of {+-1}^3 together
/// with its two-copy unitary U = g~ (x) g~.
struct OctahedronElement {
    std::array<std::array<int, 3>, 3> rotation;  // SO(3) matrix, integer entries
    Matrix unitary;                              // on H^{(x)2}

    std::array<int, 3> act(const std::array<int, 3>& u) const;
};

/// The three 90-degree generator rotations about x, y, z with their
/// SU(2) lifts exp(-i (pi/4) sigma).
std::vector<OctahedronElement> octahedron_generators();

/// Checks G(g.u) = U(g) G(u) U(g)^* on all 8 vertices for the three
/// generators.
bool covariance_generator_check(const CovariantParams& params);
bool covariance_generator_check(const Observable& obs);

/// Group averaging of an observable on {+-1}^3 over an explicit list of
/// group elements: G^(u) = (1/#G) sum_g U(g)^* G(g.u) U(g).
Observable covariantize(const Observable& obs,
                        const std::vector<OctahedronElement>& group);

}  // namespace kc::qubit

#endif
