#include <doctest.h>

#include <numbers>

#include "fpio/gram.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace fpio;

TEST_CASE("gram parameters") {
    const auto p = gram_parameters(0.5, 0.0);
    CHECK(p.delta == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(p.rho == doctest::Approx(-0.9428090415820634).epsilon(1e-14));
    const auto free = gram_parameters(0.0, 1.3);
    CHECK(free.delta == 1.0);
    CHECK(free.rho == 0.0);
    CHECK_THROWS_AS(gram_parameters(1.0, 0.0), DomainError);
}

TEST_CASE("gram matrix from explicit contractions") {
    test::Gen gen(61);
    for (int n = 0; n < 1000; ++n) {
        const auto p = gram_parameters(gen.uniform(0.0, 0.99), gen.phase());
        const Eigen::Matrix3d g = gram_matrix(p).real();
        const Eigen::Matrix3d ref = test::gram_by_wick(p.delta, p.rho);
        CHECK((g - ref).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, ref.norm()));
        const double det = determinant(g);
        CHECK(std::abs(det - gram_determinant(p)) <= 1e-12 * std::max(1.0, g.norm() * g.norm() * g.norm()));
    }
}

TEST_CASE("N(alpha) composition and inverse") {
    test::Gen gen(62);
    for (int n = 0; n < 1000; ++n) {
        const auto a = n_alpha(gen.uniform(-2.0, 2.0));
        const auto b = n_alpha(gen.uniform(-2.0, 2.0));
        if (std::abs(1.0 + a.alpha * b.alpha) < 1e-3) continue;
        const TripleMatrixd product = a.matrix * b.matrix;
        const TripleMatrixd composed = n_compose(a, b).matrix();
        CHECK((product - composed).norm() <= 1e-12 * std::max(1.0, product.norm()));
        if (std::abs(std::abs(a.alpha) - 1.0) > 1e-3) {
            const TripleMatrixd inv = n_inverse(a).matrix();
            CHECK(identity_residual(mat_mul(a.matrix, inv)) <= 1e-12 * std::max(1.0, inv.norm()));
        }
    }
    CHECK_THROWS_AS(n_compose(n_alpha(2.0), n_alpha(-0.5)), SingularError);
    CHECK_THROWS_AS(n_inverse(n_alpha(1.0)), SingularError);
}

TEST_CASE("orthogonal basis of the gram matrix") {
    test::Gen gen(63);
    for (int n = 0; n < 1000; ++n) {
        const auto p = gram_parameters(gen.uniform(0.0, 0.99), gen.phase());
        const Eigen::Matrix3d g = gram_matrix(p).real();
        const auto basis = orthonormal_basis(p);
        const double d2 = p.delta * p.delta;
        const double expected[3] = {d2 * (1 + p.rho) * (1 + p.rho), d2 * (1 - p.rho * p.rho),
                                    d2 * (1 - p.rho) * (1 - p.rho)};
        for (int i = 0; i < 3; ++i) {
            CHECK(basis[i].coefficients.norm() == doctest::Approx(1.0).epsilon(1e-15));
            const double scale = std::max(1.0, g.norm());
            CHECK(std::abs(basis[i].coefficients.dot(g * basis[i].coefficients) - expected[i]) <= 1e-12 * scale);
            CHECK(std::abs(basis[i].metric_norm - expected[i]) <= 1e-12 * scale);
            // unit metric norm, up to cancellation in v^T G v when the eigenvalue is small
            const double unit = basis[i].normalized().dot(g * basis[i].normalized());
            CHECK(std::abs(unit - 1.0) <= 1e-12 * scale / basis[i].metric_norm);
            for (int j = i + 1; j < 3; ++j) {
                CHECK(std::abs(basis[i].coefficients.dot(g * basis[j].coefficients)) <= 1e-12 * scale);
            }
        }
    }
    CHECK_THROWS_AS(orthonormal_basis(GramParameters<double>{1.0, 1.0}), SingularError);
}

TEST_CASE("two-dimensional analogue") {
    const auto p = pauli_analogue(0.3);
    CHECK(p.det == doctest::Approx(0.91));
    CHECK(p.trace == 2.0);
    for (int k = 0; k < 2; ++k) {
        const Eigen::Vector2d v = p.eigenvectors.col(k);
        const Eigen::Matrix2d m = p.matrix.real();
        CHECK((m * v - p.eigenvalues(k) * v).norm() < 1e-15);
        CHECK(v.norm() == doctest::Approx(1.0));
    }
    test::Gen gen(64);
    for (int n = 0; n < 200; ++n) {
        const double a = gen.uniform(-2.0, 2.0);
        const double b = gen.uniform(-2.0, 2.0);
        if (std::abs(1.0 + a * b) < 1e-3) continue;
        const auto [scale, alpha] = pauli_compose(a, b);
        const ModeMatrixd lhs = pauli_analogue(a).matrix * pauli_analogue(b).matrix;
        CHECK((lhs - scale * pauli_analogue(alpha).matrix).norm() <= 1e-12 * std::max(1.0, lhs.norm()));
    }
}

TEST_CASE("long double gram algebra") {
    const auto p = gram_parameters<long double>(0.25L, 0.5L);
    const auto b = orthonormal_basis(p);
    const Eigen::Matrix<long double, 3, 3> g = gram_matrix(p).real();
    CHECK(static_cast<double>(std::abs(b[0].coefficients.dot(g * b[2].coefficients))) < 1e-17);
}
