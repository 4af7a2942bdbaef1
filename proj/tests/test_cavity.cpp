#include <doctest.h>

#include "fpio/cavity.hpp"
#include "fpio/metric.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace fpio;

TEST_CASE("inside matrix matches the solved round-trip equations") {
    test::Gen gen(21);
    for (int n = 0; n < 2000; ++n) {
        const auto spec = gen.cavity();
        const double omega = gen.uniform(-10.0, 10.0);
        const ModeMatrixd ref = test::inside_matrix_by_solve(spec, omega);
        CHECK(relative_residual(inside_matrix(spec, omega), ref) <= 1e-12);
    }
}

TEST_CASE("outside matrix is unitary") {
    test::Gen gen(22);
    for (int n = 0; n < 2000; ++n) {
        const auto spec = gen.cavity();
        const ModeMatrixd c = outside_matrix(spec, gen.uniform(-10.0, 10.0));
        CHECK(identity_residual(mat_mul(c, adjoint(c))) < 1e-12);
    }
}

TEST_CASE("free space passes Input to Outside with C = -I") {
    const auto spec = symmetric_cavity(0.0, 1.0);
    for (double omega : {0.0, 0.7, 3.0}) {
        ModeMatrixd minus = -ModeMatrixd::Identity();
        CHECK(relative_residual(outside_matrix(spec, omega), minus) < 1e-15);
        CHECK(identity_residual(commutator_metric(spec, omega)) < 1e-15);
    }
}

TEST_CASE("M = C B^-1 and the metric identities") {
    test::Gen gen(23);
    for (int n = 0; n < 2000; ++n) {
        const auto spec = gen.cavity(0.9);
        const double omega = gen.uniform(-10.0, 10.0);
        const ModeMatrixd b = inside_matrix(spec, omega);
        const ModeMatrixd m = inside_to_outside_matrix(spec, omega);
        const ModeMatrixd g = commutator_metric(spec, omega);
        CHECK(relative_residual(m, ModeMatrixd(outside_matrix(spec, omega) * b.inverse())) < 1e-12);
        CHECK(relative_residual(g, test::metric_by_product(spec, omega)) < 1e-12);
        CHECK(identity_residual(mat_mul(mat_mul(m, g), adjoint(m))) < 1e-11);
        CHECK(relative_residual(mat_mul(adjoint(m), m), inverse_metric(spec, omega)) < 1e-11);
        CHECK(relative_residual(mat_mul(g, inverse_metric(spec, omega)), ModeMatrixd(ModeMatrixd::Identity())) < 1e-11);
    }
}

TEST_CASE("metric is Hermitian, positive and has the closed-form determinant") {
    test::Gen gen(24);
    for (int n = 0; n < 1000; ++n) {
        const auto spec = gen.cavity();
        const double omega = gen.uniform(-10.0, 10.0);
        const ModeMatrixd g = commutator_metric(spec, omega);
        CHECK((g - g.adjoint()).norm() <= 1e-14 * g.norm());
        const double det_closed = std::norm(spec.mirror1().t() * spec.mirror2().t()) /
                                  std::norm(round_trip_denominator(spec, omega));
        CHECK(std::abs(determinant(g).real() - det_closed) <= 1e-9 * g.squaredNorm());
        CHECK(hermitian_eig2(g).values(1) > 0.0);
    }
}

TEST_CASE("metric off-diagonal keeps its phase for complex reflectivities") {
    // Mirrors with non-real r distinguish G12 from its conjugate.
    test::Gen gen(25);
    const auto spec = CavitySpec<double>(gen.mirror(0.6), gen.mirror(0.3), 1.0);
    const ModeMatrixd g = commutator_metric(spec, 0.4);
    const ModeMatrixd ref = test::metric_by_product(spec, 0.4);
    CHECK(std::abs(g(0, 1) - ref(0, 1)) < 1e-13);
    CHECK(std::abs(g(0, 1) - std::conj(ref(0, 1))) > 1e-3);
}

TEST_CASE("perfect mirrors hit the resonance guard") {
    const auto m = validate<double>(-1.0, 0.0);
    const CavitySpec<double> spec(m, m, 1.0);
    CHECK(is_resonant(round_trip_denominator(spec, 0.0)));
    CHECK_THROWS_AS(inside_matrix(spec, 0.0), ResonanceError);
    CHECK_THROWS_AS(inside_to_outside_matrix(spec, 0.3), SingularError);
    CHECK_THROWS_AS(inverse_metric(spec, 0.3), SingularError);
}

TEST_CASE("cavity construction and linewidth") {
    const auto m = from_power_reflectance(0.81);
    CHECK_THROWS_AS(CavitySpec<double>(m, m, 0.0), DomainError);
    CHECK_THROWS_AS(CavitySpec<double>(m, m, -1.0), DomainError);
    const CavitySpec<double> spec(m, m, 2.0);
    CHECK(spec.is_symmetric());
    CHECK(cavity_linewidth(spec) == doctest::Approx((1.0 - 0.81) / (2.0 * 0.9 * 2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(cavity_linewidth(symmetric_cavity(0.0)), SingularError);
}

TEST_CASE("long double instantiation agrees with double") {
    test::Gen gen(26);
    for (int n = 0; n < 200; ++n) {
        const auto spec = gen.cavity();
        const double omega = gen.uniform(-5.0, 5.0);
        const auto spec_ld = spec.cast<long double>();
        const ModeMatrix<long double> g_ld = commutator_metric(spec_ld, static_cast<long double>(omega));
        const ModeMatrixd g = commutator_metric(spec, omega);
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                const ComplexScalar v(static_cast<double>(g_ld(i, j).real()), static_cast<double>(g_ld(i, j).imag()));
                CHECK(std::abs(v - g(i, j)) <= 1e-10 * g.norm());
            }
        }
    }
}
