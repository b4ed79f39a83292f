#include <doctest.h>

#include <unsupported/Eigen/KroneckerProduct>

#include "cloneforge/wh_group.hpp"
#include "test_util.hpp"

using namespace cloneforge;

namespace {

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix minus_i_pauli_y() {
    Matrix m(2, 2);
    m << 0, -1, 1, 0;
    return m;
}

}  // namespace

TEST_CASE("weyl_operator reproduces the Pauli group at d=2") {
    CHECK((weyl_operator(2, {0, 0}) - Matrix::Identity(2, 2)).norm() == doctest::Approx(0.0));
    CHECK((weyl_operator(2, {0, 1}) - pauli_z()).norm() == doctest::Approx(0.0));
    CHECK((weyl_operator(2, {1, 0}) - pauli_x()).norm() == doctest::Approx(0.0));
    CHECK((weyl_operator(2, {1, 1}) - minus_i_pauli_y()).norm() == doctest::Approx(0.0));
}

TEST_CASE("weyl_operator is unitary") {
    for (int d = 2; d <= 16; ++d) {
        for (const WeylIndex idx : group_elements(d)) {
            const Matrix u = weyl_operator(d, idx);
            CHECK((u.adjoint() * u - Matrix::Identity(d, d)).norm() <= 1e-12);
        }
    }
}

TEST_CASE("group closure up to a unimodular phase") {
    // Direct multiplication oracle: U_a U_b = omega^{b.p * a.q} U_{a+b}.
    for (int d : {2, 3, 5}) {
        for (const WeylIndex a : group_elements(d)) {
            for (const WeylIndex b : group_elements(d)) {
                const Matrix prod = weyl_operator(d, a) * weyl_operator(d, b);
                const WeylIndex sum{(a.p + b.p) % d, (a.q + b.q) % d};
                const Cx phase = root_of_unity(d, static_cast<long long>(b.p) * a.q);
                CHECK(std::abs(std::abs(phase) - 1.0) <= 1e-15);
                CHECK((prod - phase * weyl_operator(d, sum)).norm() <= 1e-12);
            }
        }
    }
}

TEST_CASE("d=3 pairwise commutation phases by direct multiplication") {
    // U_a U_b = omega^{a.p b.q - b.p a.q} U_b U_a ... with the sign fixed by
    // the closure phases; checked for every pair.
    const int d = 3;
    for (const WeylIndex a : group_elements(d)) {
        for (const WeylIndex b : group_elements(d)) {
            const Matrix ab = weyl_operator(d, a) * weyl_operator(d, b);
            const Matrix ba = weyl_operator(d, b) * weyl_operator(d, a);
            const Cx phase = root_of_unity(d, static_cast<long long>(b.p) * a.q -
                                                  static_cast<long long>(a.p) * b.q);
            CHECK((ab - phase * ba).norm() <= 1e-12);
        }
    }
    // The spec's worked case: U_12 and U_21 commute outright at d=3.
    const Matrix u12 = weyl_operator(3, {1, 2});
    const Matrix u21 = weyl_operator(3, {2, 1});
    CHECK((u12 * u21 - u21 * u12).norm() <= 1e-12);
}

TEST_CASE("conjugation_phase matches dense conjugation") {
    for (int d : {2, 3, 5}) {
        for (const WeylIndex g : group_elements(d)) {
            for (const WeylIndex a : group_elements(d)) {
                const Matrix ug = weyl_operator(d, g);
                const Matrix ua = weyl_operator(d, a);
                const Matrix conj = ug * ua * ug.adjoint();
                CHECK((conj - conjugation_phase(d, g, a) * ua).norm() <= 1e-12);
            }
        }
    }
}

TEST_CASE("bell_vector literal formula and identities") {
    // |I>> at d=2 is (1,0,0,1)
    Vector expect(4);
    expect << 1, 0, 0, 1;
    CHECK((bell_vector(2, {0, 0}) - expect).norm() == doctest::Approx(0.0));

    // |U_rs>> = vectorize(U_rs) = (U_rs x I)|I>> (matrix-vector product oracle)
    for (int d : {2, 3, 5}) {
        const Vector id_vec = bell_vector(d, {0, 0});
        for (const WeylIndex idx : group_elements(d)) {
            const Matrix u = weyl_operator(d, idx);
            const Vector via_kron =
                Eigen::kroneckerProduct(u, Matrix::Identity(d, d)) * id_vec;
            CHECK((bell_vector(d, idx) - vectorize(u)).norm() <= 1e-12);
            CHECK((bell_vector(d, idx) - via_kron).norm() <= 1e-12);
            CHECK(bell_vector(d, idx).norm() == doctest::Approx(std::sqrt(d)).epsilon(1e-12));
        }
    }

    // d=2, (1,1): literal formula gives |10> - |01>
    Vector sy_expect(4);
    sy_expect << 0, -1, 1, 0;
    CHECK((bell_vector(2, {1, 1}) - sy_expect).norm() == doctest::Approx(0.0));
}

TEST_CASE("Bell overlaps by explicit double-sum oracle") {
    // <<U_rs|U_r's'>> = sum_{k,k'} conj(w^{ks}) w^{k's'} <k+r|k'+r'><k|k'>
    for (int d : {2, 3, 5}) {
        for (const WeylIndex a : group_elements(d)) {
            for (const WeylIndex b : group_elements(d)) {
                Cx oracle = 0.0;
                for (int k = 0; k < d; ++k) {
                    for (int kp = 0; kp < d; ++kp) {
                        if (k != kp || (k + a.p) % d != (kp + b.p) % d) continue;
                        oracle += std::conj(root_of_unity(d, static_cast<long long>(k) * a.q)) *
                                  root_of_unity(d, static_cast<long long>(kp) * b.q);
                    }
                }
                const Cx overlap = bell_vector(d, a).dot(bell_vector(d, b));
                CHECK(std::abs(overlap - oracle) <= 1e-12);
                const Cx expect = (a == b) ? Cx(d) : Cx(0.0);
                CHECK(std::abs(overlap - expect) <= 1e-12);
            }
        }
    }
}

TEST_CASE("Bell Gram matrix is d times the identity") {
    for (int d : {2, 3, 5}) {
        const int n = d * d;
        const auto idx = group_elements(d);
        Matrix gram(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) gram(i, j) = bell_vector(d, idx[i]).dot(bell_vector(d, idx[j]));
        CHECK((gram - static_cast<double>(d) * Matrix::Identity(n, n)).norm() <= 1e-12);
    }
}

TEST_CASE("(U x U*)|I>> = |I>> for every group element") {
    for (int d : {2, 3, 5}) {
        const Vector id_vec = bell_vector(d, {0, 0});
        for (const WeylIndex idx : group_elements(d)) {
            const Matrix u = weyl_operator(d, idx);
            const Vector moved = Eigen::kroneckerProduct(u, u.conjugate()) * id_vec;
            CHECK((moved - id_vec).norm() <= 1e-12);
        }
    }
}

TEST_CASE("vectorize round trip and inner products") {
    std::mt19937_64 rng(42);
    for (int d : {2, 3, 5}) {
        const Matrix a = cftest::random_matrix(d, d, rng);
        const Matrix b = cftest::random_matrix(d, d, rng);
        CHECK((devectorize(vectorize(a)) - a).norm() <= 1e-15);

        // <<A|A>> = squared Frobenius norm, computed entrywise
        double frob_sq = 0.0;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) frob_sq += std::norm(a(i, j));
        CHECK(std::abs(vectorize(a).dot(vectorize(a)).real() - frob_sq) <= 1e-12 * frob_sq);

        // <<A|B>> = Tr[A^dag B]
        const Cx tr = (a.adjoint() * b).trace();
        CHECK(std::abs(vectorize(a).dot(vectorize(b)) - tr) <= 1e-12);
    }
    CHECK((vectorize(Matrix::Identity(3, 3)) - bell_vector(3, {0, 0})).norm() == doctest::Approx(0.0));
    CHECK_THROWS_AS(vectorize(Matrix::Zero(2, 3)), std::invalid_argument);
    CHECK_THROWS_AS(devectorize(Vector::Zero(5)), std::invalid_argument);
}

TEST_CASE("dimension and index validation") {
    CHECK_THROWS_AS(check_dim(1), std::invalid_argument);
    CHECK_THROWS_AS(check_dim(65), std::invalid_argument);
    CHECK_NOTHROW(check_dim(2));
    CHECK_NOTHROW(check_dim(64));
    CHECK_THROWS_AS(weyl_operator(2, {2, 0}), std::invalid_argument);
    CHECK_THROWS_AS(weyl_operator(2, {0, -1}), std::invalid_argument);
    CHECK_THROWS_AS(bell_vector(3, {3, 0}), std::invalid_argument);
}

TEST_CASE("monomial Weyl actions agree with dense linear algebra") {
    std::mt19937_64 rng(7);
    for (int d : {2, 3}) {
        for (const WeylIndex idx : group_elements(d)) {
            const Matrix u = weyl_operator(d, idx);
            const Matrix uc = u.conjugate();
            const Matrix w = Eigen::kroneckerProduct(Eigen::kroneckerProduct(u, u).eval(), uc);
            const WeylAction act =
                tensor(tensor(weyl_action(d, idx), weyl_action(d, idx)), weyl_action(d, idx, true));

            const Vector x = cftest::random_unit_vector(d * d * d, rng);
            CHECK((apply_action(act, x) - w * x).norm() <= 1e-12);

            const Matrix m = cftest::random_hermitian(d * d * d, rng);
            CHECK((conjugate_by_action(act, m) - w * m * w.adjoint()).norm() <= 1e-12);
            CHECK(commutator_norm(act, m) == doctest::Approx((w * m - m * w).norm()).epsilon(1e-10));
        }
    }
}
