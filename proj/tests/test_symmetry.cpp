#include <doctest.h>

#include <random>

#include "kcompat/qubit_analytic.hpp"
#include "kcompat/symmetry.hpp"

using namespace kc;

namespace {

HermitianOperator random_hermitian(int d, std::mt19937& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Matrix m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = Complex(dist(rng), dist(rng));
    return HermitianOperator(0.5 * (m + m.adjoint().eval()));
}

Matrix random_density(std::mt19937& rng, int d = 2) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Matrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = Complex(dist(rng), dist(rng));
    Matrix rho = g * g.adjoint();
    return rho / rho.trace().real();
}

}  // namespace

TEST_CASE("permutation unitaries") {
    // swap on two qubits, checked on a decomposable vector
    const Matrix u = permutation_unitary(2, {1, 0});
    CHECK((u * u.adjoint() - Matrix::Identity(4, 4)).norm() < 1e-14);
    Eigen::VectorXcd psi(2), phi(2);
    psi << 1.0, 2.0;
    phi << 3.0, Complex(0.0, 1.0);
    Eigen::VectorXcd in(4), expected(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            in(2 * i + j) = psi(i) * phi(j);
            expected(2 * i + j) = phi(i) * psi(j);
        }
    CHECK((u * in - expected).norm() < 1e-14);

    // 3-cycle on three qubits is unitary and has order 3
    const Matrix c3 = permutation_unitary(2, {1, 2, 0});
    CHECK((c3 * c3.adjoint() - Matrix::Identity(8, 8)).norm() < 1e-14);
    CHECK((c3 * c3 * c3 - Matrix::Identity(8, 8)).norm() < 1e-14);
}

TEST_CASE("symmetrizer channel") {
    std::mt19937 rng(17);
    const HermitianOperator sx{qubit::pauli_x()};
    const HermitianOperator sy{qubit::pauli_y()};

    // Sigma_2(A (x) B) = (A (x) B + B (x) A) / 2
    const auto lhs = symmetrizer(2, 2, tensor(sx, sy));
    const Matrix rhs =
        0.5 * (kron(qubit::pauli_x(), qubit::pauli_y()) +
               kron(qubit::pauli_y(), qubit::pauli_x()));
    CHECK((lhs.matrix() - rhs).norm() < 1e-14);

    CHECK((symmetrizer(2, 2, HermitianOperator::identity(4)).matrix() -
           Matrix::Identity(4, 4))
              .norm() < 1e-14);
    CHECK_THROWS(symmetrizer(2, 2, HermitianOperator::identity(8)));

    for (int trial = 0; trial < 50; ++trial) {
        const auto a = random_hermitian(4, rng);
        const auto sa = symmetrizer(2, 2, a);
        // idempotent
        CHECK((symmetrizer(2, 2, sa) - sa).hs_norm() < 1e-10);
        // HS-self-adjoint
        const auto b = random_hermitian(4, rng);
        CHECK(hs_inner(sa, b) == doctest::Approx(hs_inner(a, symmetrizer(2, 2, b))).epsilon(1e-10));
        // positive on PSD inputs
        CHECK(min_eigenvalue(symmetrizer(2, 2, psd_project(a))) >= -1e-10);
    }
}

TEST_CASE("symmetric product") {
    std::mt19937 rng(19);
    const HermitianOperator id2 = HermitianOperator::identity(2);
    const HermitianOperator sx{qubit::pauli_x()};

    const auto isx = sym_product(2, id2, sx);
    const Matrix expected = 0.5 * (kron(Matrix::Identity(2, 2), qubit::pauli_x()) +
                                   kron(qubit::pauli_x(), Matrix::Identity(2, 2)));
    CHECK((isx.matrix() - expected).norm() < 1e-14);

    // I (.) X_a(+-1) = (2 I(x)I +- a (I(x)sx + sx(x)I)) / 4
    const double a = 0.7;
    const auto xa = qubit::noisy_spin('x', a);
    const auto plus = sym_product(2, id2, xa.effect("+1"));
    const Matrix tilde_plus =
        0.25 * (2.0 * Matrix::Identity(4, 4) +
                a * (kron(Matrix::Identity(2, 2), qubit::pauli_x()) +
                     kron(qubit::pauli_x(), Matrix::Identity(2, 2))));
    CHECK((plus.matrix() - tilde_plus).norm() < 1e-14);

    for (int trial = 0; trial < 20; ++trial) {
        const auto p = random_hermitian(2, rng);
        const auto q = random_hermitian(2, rng);
        const auto r = random_hermitian(2, rng);
        CHECK((sym_product(2, p, q) - sym_product(2, q, p)).hs_norm() < 1e-10);
        CHECK((sym_product(2, sym_product(2, p, q), r) -
               sym_product(2, p, sym_product(2, q, r)))
                  .hs_norm() < 1e-10);
    }
}

TEST_CASE("hs_sym_formula") {
    std::mt19937 rng(23);
    const HermitianOperator id2 = HermitianOperator::identity(2);
    CHECK(hs_sym_formula({id2}, {id2}) == doctest::Approx(2.0));
    CHECK(hs_sym_formula({id2, id2}, {id2, id2}) == doctest::Approx(4.0));
    CHECK_THROWS(hs_sym_formula({id2}, {id2, id2}));

    for (int trial = 0; trial < 10; ++trial) {
        std::vector<HermitianOperator> as, bs;
        for (int i = 0; i < 3; ++i) {
            as.push_back(random_hermitian(2, rng));
            bs.push_back(random_hermitian(2, rng));
        }
        // against the explicit 8x8 symmetric products
        const double direct = hs_inner(sym_product_list(2, as), sym_product_list(2, bs));
        CHECK(hs_sym_formula(as, bs) == doctest::Approx(direct).epsilon(1e-9));
    }
}

TEST_CASE("symmetrize_observable") {
    std::mt19937 rng(29);
    const auto xa = qubit::noisy_spin('x', 0.6);
    // k = 1 is the identity transformation
    const auto same = symmetrize_observable(xa, 1);
    CHECK((same.effect("+1") - xa.effect("+1")).hs_norm() == 0.0);

    const auto lifted = symmetrize_observable(xa, 2);
    CHECK(lifted.space_dim() == 4);
    CHECK(validate(lifted).ok());
    const Matrix expected =
        0.25 * (2.0 * Matrix::Identity(4, 4) +
                0.6 * (kron(Matrix::Identity(2, 2), qubit::pauli_x()) +
                       kron(qubit::pauli_x(), Matrix::Identity(2, 2))));
    CHECK((lifted.effect("+1").matrix() - expected).norm() < 1e-13);

    // statistics on rho^{(x)k} reproduce the single-copy statistics
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix rho = random_density(rng);
        const Matrix rho2 = kron(rho, rho);
        for (int x = 0; x < 2; ++x) {
            const double lifted_prob = (rho2 * lifted.effect(x).matrix()).trace().real();
            const double direct = (rho * xa.effect(x).matrix()).trace().real();
            CHECK(lifted_prob == doctest::Approx(direct).epsilon(1e-10));
        }
    }

    // lifting preserves validity for random valid observables
    for (int trial = 0; trial < 5; ++trial) {
        std::uniform_real_distribution<double> tdist(0.0, 1.0);
        const auto obs = qubit::noisy_spin('y', tdist(rng));
        CHECK(validate(symmetrize_observable(obs, 3)).ok());
    }
}

TEST_CASE("sym_basis") {
    const auto b21 = sym_basis(2, 1);
    REQUIRE(b21.size() == 4);
    CHECK((b21[0].matrix() - Matrix::Identity(2, 2) / std::sqrt(2.0)).norm() < 1e-14);
    // multi-indices run lexicographically, so the last Pauli comes first
    CHECK((b21[1].matrix() - qubit::pauli_z() / std::sqrt(2.0)).norm() < 1e-14);
    CHECK((b21[2].matrix() - qubit::pauli_y() / std::sqrt(2.0)).norm() < 1e-14);
    CHECK((b21[3].matrix() - qubit::pauli_x() / std::sqrt(2.0)).norm() < 1e-14);

    // cardinality binom(k + d^2 - 1, k) and orthonormality
    struct Case {
        int d, k;
        std::size_t count;
    };
    for (const Case c : {Case{2, 1, 4}, Case{2, 2, 10}, Case{2, 3, 20}}) {
        const auto basis = sym_basis(c.d, c.k);
        REQUIRE(basis.size() == c.count);
        for (std::size_t r = 0; r < basis.size(); ++r)
            for (std::size_t s = 0; s < basis.size(); ++s) {
                const double expected = (r == s) ? 1.0 : 0.0;
                CHECK(std::abs(hs_inner(basis[r], basis[s]) - expected) < 1e-9);
            }
    }
}

TEST_CASE("symmetric two-copy joint observable") {
    const HermitianOperator half{0.5 * Matrix::Identity(2, 2)};
    const Observable coin(2, {"+1", "-1"}, {half, half});
    const auto trivial = symmetric_two_copy_joint(coin, coin);
    for (int i = 0; i < 4; ++i)
        CHECK((trivial.effect(i).matrix() - 0.25 * Matrix::Identity(4, 4)).norm() < 1e-14);

    const auto x1 = qubit::noisy_spin('x', 1.0);
    const auto y1 = qubit::noisy_spin('y', 1.0);
    const auto g = symmetric_two_copy_joint(x1, y1);
    CHECK(validate(g).ok());
    const Matrix expected =
        0.5 * (kron(x1.effect("+1").matrix(), y1.effect("+1").matrix()) +
               kron(y1.effect("+1").matrix(), x1.effect("+1").matrix()));
    CHECK((g.effect("+1|+1").matrix() - expected).norm() < 1e-14);

    // every effect lies in the symmetric subspace
    for (int i = 0; i < 4; ++i)
        CHECK((symmetrizer(2, 2, g.effect(i)) - g.effect(i)).hs_norm() < 1e-12);

    // marginals are the symmetrized single-copy observables
    for (int i = 0; i < 2; ++i) {
        const auto marg = marginal(g, i);
        const auto lifted = symmetrize_observable(i == 0 ? x1 : y1, 2);
        for (int x = 0; x < 2; ++x)
            CHECK((marg.effect(x) - lifted.effect(x)).hs_norm() < 1e-10);
    }

    const Observable three(2, {"a", "b", "c"},
                           {HermitianOperator{0.5 * Matrix::Identity(2, 2)},
                            HermitianOperator{0.25 * Matrix::Identity(2, 2)},
                            HermitianOperator{0.25 * Matrix::Identity(2, 2)}});
    CHECK_THROWS(symmetric_two_copy_joint(three, coin));
}
