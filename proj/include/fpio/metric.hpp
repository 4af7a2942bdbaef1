#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <sstream>
#include <vector>

#include "fpio/cavity.hpp"
#include "fpio/linalg.hpp"
#include "fpio/quadrature.hpp"

namespace fpio {

/// Eigensystem of a metric with equal diagonal entries,
/// G = [[g, |G12| e^{-i phi}], [|G12| e^{i phi}, g]].
template <typename Scalar>
struct MetricEigensystem {
    Scalar lambda1;  ///< g + |G12|
    Scalar lambda2;  ///< g - |G12|
    Scalar phi;      ///< relative phase of the eigenvector components, arg G21; 0 when G12 = 0
    ModeMatrix<Scalar> diagonalizer;  ///< unitary U with U^dagger G U = diag(lambda1, lambda2)
};

/// E U^dagger with E = diag(lambda_j^{-1/2}); maps Inside operators b onto
/// operators with canonical commutators: W G W^dagger = I.
template <typename Scalar>
struct CanonicalizingMap {
    ModeMatrix<Scalar> entries;
};

template <typename Scalar>
MetricEigensystem<Scalar> eigen_metric(const ModeMatrix<Scalar>& g) {
    using std::abs;
    const Scalar scale = g.norm();
    const Scalar asym = (g - g.adjoint()).norm();
    if (asym > Scalar(1e-12) * scale) {
        std::ostringstream msg;
        msg << "metric is not Hermitian (||G - G^dagger||_F = " << static_cast<double>(asym) << ")";
        throw ValidationError(msg.str());
    }
    const Scalar diag_gap = abs(g(0, 0) - g(1, 1));
    if (diag_gap > Scalar(1e-12) * scale) {
        std::ostringstream msg;
        msg << "metric must have equal diagonal entries (|G11 - G22| = " << static_cast<double>(diag_gap) << ")";
        throw ValidationError(msg.str());
    }

    const Scalar diag = (std::real(g(0, 0)) + std::real(g(1, 1))) / Scalar(2);
    const Complex<Scalar> lower = (g(1, 0) + std::conj(g(0, 1))) / Scalar(2);
    const Scalar modulus = abs(lower);

    MetricEigensystem<Scalar> out;
    out.lambda1 = diag + modulus;
    out.lambda2 = diag - modulus;
    out.phi = modulus == Scalar(0) ? Scalar(0) : std::arg(lower);

    const Scalar inv_sqrt2 = Scalar(1) / std::sqrt(Scalar(2));
    const Complex<Scalar> left = std::polar(inv_sqrt2, -out.phi / Scalar(2));
    const Complex<Scalar> right = std::polar(inv_sqrt2, out.phi / Scalar(2));
    out.diagonalizer << left, left, right, -right;
    return out;
}

/// Rows (1/sqrt(2 lambda_j)) (e^{i phi/2}, -(-1)^j e^{-i phi/2}), j = 1, 2.
template <typename Scalar>
CanonicalizingMap<Scalar> canonicalizing_map(const ModeMatrix<Scalar>& g) {
    const MetricEigensystem<Scalar> eig = eigen_metric(g);
    const Scalar floor = Scalar(16) * std::numeric_limits<Scalar>::epsilon() * std::abs(eig.lambda1);
    if (!(eig.lambda2 > floor)) {
        std::ostringstream msg;
        msg << "metric is degenerate (lambda2 = " << static_cast<double>(eig.lambda2)
            << "); canonical operators do not exist for perfect mirrors";
        throw SingularError(msg.str());
    }
    const Complex<Scalar> a = std::polar(Scalar(1), eig.phi / Scalar(2));
    const Complex<Scalar> b = std::conj(a);
    const Scalar s1 = Scalar(1) / std::sqrt(Scalar(2) * eig.lambda1);
    const Scalar s2 = Scalar(1) / std::sqrt(Scalar(2) * eig.lambda2);
    CanonicalizingMap<Scalar> out;
    out.entries << s1 * a, s1 * b,
                   s2 * a, -s2 * b;
    return out;
}

/// <phi|phi> = integral of K^dagger(omega) G(omega) K(omega) over the grid
/// (trapezoid rule).
template <typename Scalar>
Scalar one_photon_metric_norm(std::span<const Scalar> grid, std::span<const ModeVector<Scalar>> coeffs,
                              const CavitySpec<Scalar>& spec) {
    check_grid(grid);
    if (coeffs.size() != grid.size()) {
        throw ValidationError("coefficient count does not match grid size");
    }
    std::vector<Scalar> integrand(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!all_finite(coeffs[i])) throw DomainError("one-photon coefficients must be finite");
        const ModeMatrix<Scalar> g = commutator_metric(spec, grid[i]);
        integrand[i] = std::real((coeffs[i].adjoint() * g * coeffs[i])(0, 0));
    }
    return trapezoid(std::span<const Scalar>(integrand), grid);
}

}  // namespace fpio
