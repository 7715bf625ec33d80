#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "kcompat/qubit_analytic.hpp"
#include "kcompat/symmetry.hpp"

using namespace kc;
using namespace kc::qubit;

namespace {

Matrix random_density(std::mt19937& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Matrix g(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) g(i, j) = Complex(dist(rng), dist(rng));
    Matrix rho = g * g.adjoint();
    return rho / rho.trace().real();
}

// Closure of the generator set under composition: the 24 rotations of the
// octahedron, each with its two-copy unitary.
std::vector<OctahedronElement> full_octahedron_group() {
    auto compose = [](const OctahedronElement& a, const OctahedronElement& b) {
        OctahedronElement out;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                int sum = 0;
                for (int l = 0; l < 3; ++l)
                    sum += a.rotation[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] *
                           b.rotation[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)];
                out.rotation[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = sum;
            }
        out.unitary = a.unitary * b.unitary;
        return out;
    };
    std::vector<OctahedronElement> group;
    OctahedronElement id{{{{{1, 0, 0}}, {{0, 1, 0}}, {{0, 0, 1}}}},
                         Matrix::Identity(4, 4)};
    group.push_back(id);
    bool grew = true;
    while (grew) {
        grew = false;
        for (std::size_t i = 0; i < group.size(); ++i)
            for (const auto& g : octahedron_generators()) {
                const auto candidate = compose(group[i], g);
                const bool known =
                    std::any_of(group.begin(), group.end(), [&](const OctahedronElement& h) {
                        return h.rotation == candidate.rotation;
                    });
                if (!known) {
                    group.push_back(candidate);
                    grew = true;
                }
            }
    }
    return group;
}

}  // namespace

TEST_CASE("noisy_spin") {
    const auto x1 = noisy_spin('x', 1.0);
    CHECK((x1.effect("+1").matrix() - 0.5 * (Matrix::Identity(2, 2) + pauli_x())).norm() <
          1e-15);
    const auto z0 = noisy_spin('z', 0.0);
    CHECK((z0.effect("-1").matrix() - 0.5 * Matrix::Identity(2, 2)).norm() < 1e-15);
    CHECK_THROWS(noisy_spin('w', 0.5));
    CHECK_THROWS(noisy_spin('x', 1.5));
}

TEST_CASE("pair and triple criteria") {
    CHECK(busch_pair_compatible(1.0, 0.0));
    CHECK(busch_pair_compatible(0.6, 0.8));
    CHECK(!busch_pair_compatible(0.6, 0.81));
    CHECK_THROWS(busch_pair_compatible(1.1, 0.0));

    const double r3 = 1.0 / std::sqrt(3.0);
    CHECK(busch_triple_compatible(r3, r3, r3));
    CHECK(!busch_triple_compatible(r3 + 1e-9, r3, r3));
    CHECK(busch_triple_compatible(1.0, 0.0, 0.0));
}

TEST_CASE("busch_pair_joint") {
    const auto g = busch_pair_joint('x', 0.6, 'y', 0.8);
    CHECK(validate(g).ok());
    const Matrix expected =
        0.25 * (Matrix::Identity(2, 2) + 0.6 * pauli_x() - 0.8 * pauli_y());
    CHECK((g.effect("+1|-1").matrix() - expected).norm() < 1e-15);
    for (int i = 0; i < 2; ++i) {
        const auto marg = marginal(g, i);
        const auto target = noisy_spin(i == 0 ? 'x' : 'y', i == 0 ? 0.6 : 0.8);
        for (int x = 0; x < 2; ++x)
            CHECK((marg.effect(x) - target.effect(x)).hs_norm() < 1e-14);
    }
    CHECK_THROWS(busch_pair_joint('x', 0.9, 'y', 0.9));
}

TEST_CASE("mixing bounds") {
    // one pure branch: a = 1 with (b, c) on the circle
    const MixingParams pure{1.0, 0.0, 0.0, 0.0, 0.3, 0.0};
    const auto eq = mixing_equality_targets(pure);
    CHECK(eq.a == doctest::Approx(1.0));
    CHECK(eq.b == doctest::Approx(std::sin(0.3)));
    CHECK(eq.c == doctest::Approx(std::cos(0.3)));

    // symmetric point reaches (1 + sqrt 2)/3 in every coordinate
    const double qpi = std::acos(-1.0) / 4.0;
    const MixingParams sym{1.0 / 3, 1.0 / 3, 1.0 / 3, qpi, qpi, qpi};
    const double reach = (1.0 + std::sqrt(2.0)) / 3.0;
    const auto eq_sym = mixing_equality_targets(sym);
    CHECK(eq_sym.a == doctest::Approx(reach).epsilon(1e-12));
    CHECK(eq_sym.b == doctest::Approx(reach).epsilon(1e-12));
    CHECK(eq_sym.c == doctest::Approx(reach).epsilon(1e-12));
    CHECK(mixing_bound_feasible({reach, reach, reach}, sym));
    CHECK(!mixing_bound_feasible({reach + 1e-6, reach, reach}, sym));

    CHECK_THROWS(mixing_bound_feasible({0.5, 0.5, 0.5},
                                       MixingParams{0.7, 0.7, -0.4, 0.0, 0.0, 0.0}));
}

TEST_CASE("mixing joint observable") {
    std::mt19937 rng(41);
    const double qpi = std::acos(-1.0) / 4.0;
    for (const MixingParams& p :
         {MixingParams{1.0 / 3, 1.0 / 3, 1.0 / 3, qpi, qpi, qpi},
          MixingParams{0.5, 0.3, 0.2, 0.4, 1.1, 0.7}}) {
        const auto g = mixing_joint_observable(p);
        CHECK(g.space_dim() == 4);
        CHECK(validate(g).ok());

        // statistics of the marginals on rho (x) rho match the noisy spins
        // at the equality targets
        const auto eq = mixing_equality_targets(p);
        const std::array<std::pair<char, double>, 3> targets{
            {{'x', eq.a}, {'y', eq.b}, {'z', eq.c}}};
        for (int trial = 0; trial < 10; ++trial) {
            const Matrix rho = random_density(rng);
            const Matrix rho2 = kron(rho, rho);
            for (int i = 0; i < 3; ++i) {
                const auto marg = marginal(g, i);
                const auto single = noisy_spin(targets[static_cast<std::size_t>(i)].first,
                                               targets[static_cast<std::size_t>(i)].second);
                for (int x = 0; x < 2; ++x) {
                    const double lhs = (rho2 * marg.effect(x).matrix()).trace().real();
                    const double rhs = (rho * single.effect(x).matrix()).trace().real();
                    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
                }
            }
        }
    }
}

TEST_CASE("covariant observable on the parameter polytope") {
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        // uniform over the triangle alpha, beta >= 0, alpha + beta <= 3/8
        double alpha = unit(rng) * 3.0 / 8.0;
        double beta = unit(rng) * 3.0 / 8.0;
        if (alpha + beta > 3.0 / 8.0) {
            alpha = 3.0 / 8.0 - alpha;
            beta = 3.0 / 8.0 - beta;
        }
        const CovariantParams p{alpha, beta};
        const auto obs = covariant_observable(p);
        CHECK(validate(obs).ok());
        for (int i = 0; i < 8; ++i) CHECK(min_eigenvalue(obs.effect(i)) >= -1e-10);

        // marginals are exactly the symmetrized noisy spins
        const double a = covariant_marginal_noise(p);
        const char axes[3] = {'x', 'y', 'z'};
        for (int i = 0; i < 3; ++i) {
            const auto marg = marginal(obs, i);
            const auto lifted = symmetrize_observable(noisy_spin(axes[i], std::abs(a)), 2);
            if (a >= 0.0)
                for (int x = 0; x < 2; ++x)
                    CHECK((marg.effect(x) - lifted.effect(x)).hs_norm() < 1e-10);
        }
    }

    // polytope vertices, including both boundary extremes
    CHECK_NOTHROW(covariant_observable({3.0 / 8.0, 0.0}));
    CHECK_NOTHROW(covariant_observable({0.0, 3.0 / 8.0}));
    CHECK_THROWS(covariant_effect({0.5, 0.0}, {+1, +1, +1}));
    CHECK_THROWS(covariant_effect({-0.01, 0.1}, {+1, +1, +1}));

    CHECK(two_copy_threshold_analytic() == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
    CHECK(covariant_marginal_noise({3.0 / 8.0, 0.0}) ==
          doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
}

TEST_CASE("commutant operator algebra") {
    const auto ops = mpq_operators();
    auto prod = [](const HermitianOperator& a, const HermitianOperator& b) {
        return Matrix(a.matrix() * b.matrix());
    };

    CHECK((prod(ops.m2, ops.m2) - (ops.m0.matrix() - 2.0 * ops.m2.matrix()) / 3.0).norm() <
          1e-12);
    CHECK((prod(ops.m3, ops.m3) - 2.0 * (ops.m0.matrix() + ops.m1.matrix())).norm() < 1e-12);
    CHECK((prod(ops.m1, ops.m3) - ops.m3.matrix()).norm() < 1e-12);
    CHECK((prod(ops.m2, ops.m3) - ops.m3.matrix() / 3.0).norm() < 1e-12);
    CHECK((prod(ops.m1, ops.m2) -
           (ops.m0.matrix() + ops.m1.matrix() - 3.0 * ops.m2.matrix()) / 3.0)
              .norm() < 1e-12);
    CHECK((prod(ops.m1, ops.m1) - ops.m0.matrix()).norm() < 1e-12);

    // the four spectral projections: idempotent, trace one, mutually
    // orthogonal, resolving the identity
    const std::array<const HermitianOperator*, 4> projections{
        {&ops.p_plus, &ops.p_minus, &ops.q_plus, &ops.q_minus}};
    Matrix sum = Matrix::Zero(4, 4);
    for (const auto* p : projections) {
        CHECK((prod(*p, *p) - p->matrix()).norm() < 1e-12);
        CHECK(p->trace() == doctest::Approx(1.0).epsilon(1e-12));
        sum += p->matrix();
    }
    for (std::size_t i = 0; i < projections.size(); ++i)
        for (std::size_t j = i + 1; j < projections.size(); ++j)
            CHECK(prod(*projections[i], *projections[j]).norm() < 1e-12);
    CHECK((sum - Matrix::Identity(4, 4)).norm() < 1e-12);

    // m4 and m5 are antisymmetric under the copy swap
    const Matrix swap = permutation_unitary(2, {1, 0});
    CHECK((swap * ops.m4.matrix() * swap.adjoint() + ops.m4.matrix()).norm() < 1e-12);
    CHECK((swap * ops.m5.matrix() * swap.adjoint() + ops.m5.matrix()).norm() < 1e-12);
}

TEST_CASE("octahedron generators") {
    const auto gens = octahedron_generators();
    REQUIRE(gens.size() == 3);
    // each generator has order 4 on the vertices
    for (const auto& g : gens) {
        std::array<int, 3> u{+1, -1, +1};
        auto v = u;
        for (int i = 0; i < 4; ++i) v = g.act(v);
        CHECK(v == u);
        CHECK((g.unitary * g.unitary.adjoint() - Matrix::Identity(4, 4)).norm() < 1e-12);
    }
    // x-rotation maps (x, y, z) to (x, -z, y)
    CHECK(gens[0].act({+1, +1, -1}) == std::array<int, 3>{+1, +1, +1});
    CHECK(full_octahedron_group().size() == 24);
}

TEST_CASE("covariance checks") {
    CHECK(covariance_generator_check(CovariantParams{0.2, 0.1}));
    CHECK(covariance_generator_check(CovariantParams{3.0 / 8.0, 0.0}));

    // corrupting one effect breaks covariance
    auto obs = covariant_observable({0.2, 0.1});
    std::vector<HermitianOperator> effects;
    for (int i = 0; i < 8; ++i) effects.push_back(obs.effect(i));
    const HermitianOperator bump{0.01 * kron(pauli_z(), pauli_z())};
    effects[0] = effects[0] + bump;
    effects[1] = effects[1] - bump;
    const Observable corrupted(4, obs.outcomes(), std::move(effects));
    CHECK(!covariance_generator_check(corrupted));
}

TEST_CASE("covariantize") {
    const auto group = full_octahedron_group();

    // a fixed point: covariant observables are unchanged
    const auto cov = covariant_observable({0.25, 0.05});
    const auto again = covariantize(cov, group);
    for (int i = 0; i < 8; ++i)
        CHECK((again.effect(i) - cov.effect(i)).hs_norm() < 1e-12);

    // averaging an asymmetric observable on two copies yields a covariant one
    std::vector<std::string> outcomes;
    std::vector<HermitianOperator> effects;
    const auto g12 = busch_pair_joint('x', 0.6, 'y', 0.8);
    const auto z = noisy_spin('z', 1.0);
    for (int x : {0, 1})
        for (int y : {0, 1})
            for (int zi : {0, 1}) {
                outcomes.push_back(std::string(x == 0 ? "+1" : "-1") + "|" +
                                   (y == 0 ? "+1" : "-1") + "|" + (zi == 0 ? "+1" : "-1"));
                effects.push_back(tensor(g12.effect(2 * x + y), z.effect(zi)));
            }
    const Observable skew(4, std::move(outcomes), std::move(effects),
                          {{"+1", "-1"}, {"+1", "-1"}, {"+1", "-1"}});
    REQUIRE(validate(skew).ok());
    CHECK(!covariance_generator_check(skew));
    const auto averaged = covariantize(skew, group);
    CHECK(validate(averaged).ok());
    CHECK(covariance_generator_check(averaged));

    CHECK_THROWS(covariantize(skew, {}));
}
