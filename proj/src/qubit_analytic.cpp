#include "kcompat/qubit_analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace kc::qubit {

namespace {

const Complex I_unit(0.0, 1.0);

std::string sign_label(int s) { return s > 0 ? "+1" : "-1"; }

std::string vertex_label(const std::array<int, 3>& u) {
    return sign_label(u[0]) + "|" + sign_label(u[1]) + "|" + sign_label(u[2]);
}

// All 8 vertices, row-major in (x, y, z) with +1 before -1, matching the
// product_joint ordering of three {+1,-1} factors.
std::vector<std::array<int, 3>> cube_vertices() {
    std::vector<std::array<int, 3>> out;
    for (int x : {+1, -1})
        for (int y : {+1, -1})
            for (int z : {+1, -1}) out.push_back({x, y, z});
    return out;
}

Matrix dot_sigma(double x, double y, double z) {
    return x * pauli_x() + y * pauli_y() + z * pauli_z();
}

}  // namespace

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0, -I_unit, I_unit, 0;
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix pauli(char axis) {
    switch (axis) {
        case 'x': return pauli_x();
        case 'y': return pauli_y();
        case 'z': return pauli_z();
        default: throw std::invalid_argument("pauli: axis must be x, y or z");
    }
}

bool CovariantParams::valid() const {
    return alpha >= 0.0 && beta >= 0.0 && alpha + beta <= 3.0 / 8.0 + 1e-15;
}

bool MixingParams::valid() const {
    const double half_pi = std::asin(1.0);
    return lambda1 >= 0.0 && lambda2 >= 0.0 && lambda3 >= 0.0 &&
           std::abs(lambda1 + lambda2 + lambda3 - 1.0) <= 1e-12 &&
           angA >= 0.0 && angA <= half_pi && angB >= 0.0 && angB <= half_pi &&
           angC >= 0.0 && angC <= half_pi;
}

Observable noisy_spin(char axis, double t) {
    if (t < 0.0 || t > 1.0) throw std::invalid_argument("noisy_spin: t must be in [0,1]");
    const Matrix id = Matrix::Identity(2, 2);
    const Matrix s = pauli(axis);
    return Observable(2, {"+1", "-1"},
                      {HermitianOperator(0.5 * (id + t * s)),
                       HermitianOperator(0.5 * (id - t * s))});
}

bool busch_pair_compatible(double a, double b) {
    if (a < 0.0 || a > 1.0 || b < 0.0 || b > 1.0)
        throw std::invalid_argument("busch_pair_compatible: parameters must be in [0,1]");
    return a * a + b * b <= 1.0 + 1e-12;
}

bool busch_triple_compatible(double a, double b, double c) {
    if (a < 0.0 || a > 1.0 || b < 0.0 || b > 1.0 || c < 0.0 || c > 1.0)
        throw std::invalid_argument("busch_triple_compatible: parameters must be in [0,1]");
    return a * a + b * b + c * c <= 1.0 + 1e-12;
}

Observable busch_pair_joint(char axis1, double a, char axis2, double b) {
    if (a * a + b * b > 1.0 + 1e-12)
        throw std::invalid_argument("busch_pair_joint: a^2 + b^2 must be <= 1");
    const Matrix id = Matrix::Identity(2, 2);
    const Matrix s1 = pauli(axis1);
    const Matrix s2 = pauli(axis2);
    std::vector<std::string> outcomes;
    std::vector<HermitianOperator> effects;
    for (int x : {+1, -1}) {
        for (int y : {+1, -1}) {
            outcomes.push_back(sign_label(x) + "|" + sign_label(y));
            effects.emplace_back(0.25 * (id + x * a * s1 + y * b * s2));
        }
    }
    return Observable(2, std::move(outcomes), std::move(effects),
                      {{"+1", "-1"}, {"+1", "-1"}});
}

bool mixing_bound_feasible(const NoisySpinTriple& t, const MixingParams& p) {
    if (!p.valid()) throw std::invalid_argument("mixing_bound_feasible: invalid params");
    const auto eq = mixing_equality_targets(p);
    return t.a <= eq.a + 1e-12 && t.b <= eq.b + 1e-12 && t.c <= eq.c + 1e-12;
}

NoisySpinTriple mixing_equality_targets(const MixingParams& p) {
    return {p.lambda1 + p.lambda2 * std::cos(p.angC) + p.lambda3 * std::sin(p.angA),
            p.lambda1 * std::sin(p.angB) + p.lambda2 + p.lambda3 * std::cos(p.angA),
            p.lambda1 * std::cos(p.angB) + p.lambda2 * std::sin(p.angC) + p.lambda3};
}

Observable mixing_joint_observable(const MixingParams& p) {
    if (!p.valid()) throw std::invalid_argument("mixing_joint_observable: invalid params");
    const Observable sharp_x = noisy_spin('x', 1.0);
    const Observable sharp_y = noisy_spin('y', 1.0);
    const Observable sharp_z = noisy_spin('z', 1.0);
    // Pairwise optimal joints on the Busch circle, one per sharp choice.
    const Observable g23 = busch_pair_joint('y', std::sin(p.angB), 'z', std::cos(p.angB));
    const Observable g13 = busch_pair_joint('x', std::cos(p.angC), 'z', std::sin(p.angC));
    const Observable g12 = busch_pair_joint('x', std::sin(p.angA), 'y', std::cos(p.angA));

    std::vector<std::string> outcomes;
    std::vector<HermitianOperator> effects;
    for (const auto& u : cube_vertices()) {
        const std::string lx = sign_label(u[0]);
        const std::string ly = sign_label(u[1]);
        const std::string lz = sign_label(u[2]);
        outcomes.push_back(vertex_label(u));
        HermitianOperator eff =
            tensor(sharp_x.effect(lx), g23.effect(ly + "|" + lz)).scaled(p.lambda1) +
            tensor(sharp_y.effect(ly), g13.effect(lx + "|" + lz)).scaled(p.lambda2) +
            tensor(sharp_z.effect(lz), g12.effect(lx + "|" + ly)).scaled(p.lambda3);
        effects.push_back(std::move(eff));
    }
    return Observable(4, std::move(outcomes), std::move(effects),
                      {{"+1", "-1"}, {"+1", "-1"}, {"+1", "-1"}});
}

HermitianOperator covariant_effect(const CovariantParams& p, const std::array<int, 3>& u) {
    if (!p.valid()) throw std::invalid_argument("covariant_effect: parameters outside polytope");
    const Matrix id = Matrix::Identity(2, 2);
    const Matrix us = dot_sigma(u[0], u[1], u[2]);
    const Matrix cross = kron(pauli_x(), pauli_x()) + kron(pauli_y(), pauli_y()) +
                         kron(pauli_z(), pauli_z());
    const Matrix m = (4.0 * (p.alpha + p.beta) - 1.0) / 16.0 * (kron(us, us) - cross) +
                     (p.alpha - p.beta) / (4.0 * std::sqrt(3.0)) *
                         (kron(us, id) + kron(id, us)) +
                     0.125 * kron(id, id);
    return HermitianOperator(m);
}

Observable covariant_observable(const CovariantParams& p) {
    std::vector<std::string> outcomes;
    std::vector<HermitianOperator> effects;
    for (const auto& u : cube_vertices()) {
        outcomes.push_back(vertex_label(u));
        effects.push_back(covariant_effect(p, u));
    }
    return Observable(4, std::move(outcomes), std::move(effects),
                      {{"+1", "-1"}, {"+1", "-1"}, {"+1", "-1"}});
}

double covariant_marginal_noise(const CovariantParams& p) {
    return 4.0 * (p.alpha - p.beta) / std::sqrt(3.0);
}

double two_copy_threshold_analytic() {
    // Linear objective over the polytope {alpha, beta >= 0, alpha+beta <= 3/8}:
    // the maximum sits at the vertex (3/8, 0).
    double best = 0.0;
    const std::array<CovariantParams, 3> vertices{{{0.0, 0.0}, {3.0 / 8.0, 0.0}, {0.0, 3.0 / 8.0}}};
    for (const auto& v : vertices) best = std::max(best, covariant_marginal_noise(v));
    return best;
}

MpqOperators mpq_operators() {
    const Matrix id = Matrix::Identity(2, 2);
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    const Matrix ns = inv_sqrt3 * dot_sigma(1, 1, 1);

    const Matrix m0 = kron(id, id);
    const Matrix m1 = kron(ns, ns);
    const Matrix m2 = (kron(pauli_x(), pauli_x()) + kron(pauli_y(), pauli_y()) +
                       kron(pauli_z(), pauli_z())) /
                      3.0;
    const Matrix m3 = kron(ns, id) + kron(id, ns);
    const Matrix m4 = kron(ns, id) - kron(id, ns);
    const Matrix m5 = kron(pauli_x(), pauli_y()) - kron(pauli_y(), pauli_x()) +
                      kron(pauli_y(), pauli_z()) - kron(pauli_z(), pauli_y()) +
                      kron(pauli_z(), pauli_x()) - kron(pauli_x(), pauli_z());

    return MpqOperators{
        HermitianOperator(m0), HermitianOperator(m1), HermitianOperator(m2),
        HermitianOperator(m3), HermitianOperator(m4), HermitianOperator(m5),
        HermitianOperator(0.25 * (m0 + m1 + m3)), HermitianOperator(0.25 * (m0 + m1 - m3)),
        HermitianOperator(0.25 * (m0 - 3.0 * m2)),
        HermitianOperator(0.25 * (m0 - 2.0 * m1 + 3.0 * m2))};
}

std::array<int, 3> OctahedronElement::act(const std::array<int, 3>& u) const {
    std::array<int, 3> out{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            out[static_cast<std::size_t>(i)] +=
                rotation[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                u[static_cast<std::size_t>(j)];
    return out;
}

std::vector<OctahedronElement> octahedron_generators() {
    const double c = std::sqrt(0.5);
    auto lift = [&](char axis) {
        // exp(-i (pi/4) sigma) = (I - i sigma) / sqrt(2)
        Matrix g = c * (Matrix::Identity(2, 2) - I_unit * pauli(axis));
        return kron(g, g);
    };
    std::vector<OctahedronElement> gens;
    OctahedronElement gx{{{{{1, 0, 0}}, {{0, 0, -1}}, {{0, 1, 0}}}}, lift('x')};
    OctahedronElement gy{{{{{0, 0, 1}}, {{0, 1, 0}}, {{-1, 0, 0}}}}, lift('y')};
    OctahedronElement gz{{{{{0, -1, 0}}, {{1, 0, 0}}, {{0, 0, 1}}}}, lift('z')};
    gens.push_back(std::move(gx));
    gens.push_back(std::move(gy));
    gens.push_back(std::move(gz));
    return gens;
}

bool covariance_generator_check(const Observable& obs) {
    for (const auto& g : octahedron_generators()) {
        for (const auto& u : cube_vertices()) {
            const HermitianOperator lhs = obs.effect(vertex_label(g.act(u)));
            const HermitianOperator rhs = obs.effect(vertex_label(u)).conjugated_by(g.unitary);
            if ((lhs - rhs).hs_norm() > 1e-10) return false;
        }
    }
    return true;
}

bool covariance_generator_check(const CovariantParams& params) {
    return covariance_generator_check(covariant_observable(params));
}

Observable covariantize(const Observable& obs, const std::vector<OctahedronElement>& group) {
    if (group.empty()) throw std::invalid_argument("covariantize: empty group");
    std::vector<std::string> outcomes;
    std::vector<HermitianOperator> effects;
    for (const auto& u : cube_vertices()) {
        HermitianOperator sum = HermitianOperator::zero(obs.space_dim());
        for (const auto& g : group)
            sum = sum + obs.effect(vertex_label(g.act(u))).conjugated_by(g.unitary.adjoint());
        outcomes.push_back(vertex_label(u));
        effects.push_back(sum.scaled(1.0 / static_cast<double>(group.size())));
    }
    return Observable(obs.space_dim(), std::move(outcomes), std::move(effects),
                      {{"+1", "-1"}, {"+1", "-1"}, {"+1", "-1"}});
}

}  // namespace kc::qubit
