#pragma once

// Two-photon, two-mode Gram algebra of a symmetric cavity in a discrete-mode
// picture. The Inside kets |2,0>, |1,1>, |0,2> are linearly independent but
// not orthogonal; their Gram matrix is Delta^2 N(rho), where
//
//   N(alpha) = S0 + alpha^2 S1 + sqrt(2) alpha S2
//
// is closed under multiplication: N(a) N(b) = (1 + a b)^2 N((a + b)/(1 + a b)).

#include <array>
#include <cmath>
#include <sstream>
#include <string_view>

#include "fpio/linalg.hpp"
#include "fpio/mirror.hpp"

namespace fpio {

template <typename Scalar>
struct GramParameters {
    Scalar delta;  ///< [b_i, b_i^dagger]
    Scalar rho;    ///< [b_2, b_1^dagger] / Delta
};

/// Delta = (1 - R^2)/(1 - 2R cos 2x + R^2), rho = -2 sqrt(R)/(1 + R) cos x.
template <typename Scalar>
GramParameters<Scalar> gram_parameters(Scalar R, Scalar x) {
    using std::cos;
    using std::sqrt;
    (void)PowerReflectance<Scalar>(R);
    return {(Scalar(1) - R * R) / (Scalar(1) - Scalar(2) * R * cos(Scalar(2) * x) + R * R),
            Scalar(-2) * sqrt(R) / (Scalar(1) + R) * cos(x)};
}

template <typename Scalar>
TripleMatrix<Scalar> s0() {
    return TripleMatrix<Scalar>::Identity();
}

template <typename Scalar>
TripleMatrix<Scalar> s1() {
    TripleMatrix<Scalar> m = TripleMatrix<Scalar>::Zero();
    m(0, 2) = m(1, 1) = m(2, 0) = Scalar(1);
    return m;
}

template <typename Scalar>
TripleMatrix<Scalar> s2() {
    TripleMatrix<Scalar> m = TripleMatrix<Scalar>::Zero();
    m(0, 1) = m(1, 0) = m(1, 2) = m(2, 1) = Scalar(1);
    return m;
}

template <typename Scalar>
struct NAlpha {
    Scalar alpha;
    TripleMatrix<Scalar> matrix;
};

/// scale * N(alpha); the result of composing or inverting N matrices.
template <typename Scalar>
struct ScaledNAlpha {
    Scalar scale;
    NAlpha<Scalar> n;

    TripleMatrix<Scalar> matrix() const { return scale * n.matrix; }
};

template <typename Scalar>
NAlpha<Scalar> n_alpha(Scalar alpha) {
    using std::sqrt;
    return {alpha, s0<Scalar>() + alpha * alpha * s1<Scalar>() + sqrt(Scalar(2)) * alpha * s2<Scalar>()};
}

/// N(a) N(b) = (1 + ab)^2 N((a + b)/(1 + ab)).
template <typename Scalar>
ScaledNAlpha<Scalar> n_compose(const NAlpha<Scalar>& a, const NAlpha<Scalar>& b) {
    const Scalar k = Scalar(1) + a.alpha * b.alpha;
    if (k == Scalar(0)) {
        throw SingularError("N(alpha) composition is singular for alpha * beta = -1");
    }
    return {k * k, n_alpha((a.alpha + b.alpha) / k)};
}

/// N(a)^-1 = N(-a) / (1 - a^2)^2.
template <typename Scalar>
ScaledNAlpha<Scalar> n_inverse(const NAlpha<Scalar>& a) {
    const Scalar k = Scalar(1) - a.alpha * a.alpha;
    if (k == Scalar(0)) {
        throw SingularError("N(alpha) is singular for |alpha| = 1");
    }
    return {Scalar(1) / (k * k), n_alpha(-a.alpha)};
}

/// Gram matrix of |2,0>, |1,1>, |0,2> (Inside kets): Delta^2 N(rho).
template <typename Scalar>
TripleMatrix<Scalar> gram_matrix(const GramParameters<Scalar>& p) {
    return p.delta * p.delta * n_alpha(p.rho).matrix;
}

/// Closed-form Gram determinant Delta^6 (1 - rho^2)^3.
template <typename Scalar>
Scalar gram_determinant(const GramParameters<Scalar>& p) {
    const Scalar d2 = p.delta * p.delta;
    const Scalar k = Scalar(1) - p.rho * p.rho;
    return d2 * d2 * d2 * k * k * k;
}

template <typename Scalar>
struct BasisVector {
    std::string_view name;                          ///< "n+", "n0", "n-"
    Eigen::Matrix<Scalar, 3, 1> coefficients;       ///< on |2,0>, |1,1>, |0,2>; Euclidean unit norm
    Scalar eigenvalue;                              ///< of N(rho)
    Scalar metric_norm;                             ///< v^T G v = Delta^2 * eigenvalue

    /// Coefficients rescaled to unit Gram norm.
    Eigen::Matrix<Scalar, 3, 1> normalized() const {
        using std::sqrt;
        return coefficients / sqrt(metric_norm);
    }
};

/// The G-orthogonal basis n+, n0, n- (in that order) with metric norms
/// Delta^2 (1 + rho)^2, Delta^2 (1 - rho^2), Delta^2 (1 - rho)^2.
template <typename Scalar>
std::array<BasisVector<Scalar>, 3> orthonormal_basis(const GramParameters<Scalar>& p) {
    using std::abs;
    using std::sqrt;
    if (!(abs(p.rho) < Scalar(1))) {
        std::ostringstream msg;
        msg << "Gram matrix is degenerate for |rho| = " << static_cast<double>(abs(p.rho));
        throw SingularError(msg.str());
    }
    const Scalar h = Scalar(1) / Scalar(2);
    const Scalar s = Scalar(1) / sqrt(Scalar(2));
    const Scalar d2 = p.delta * p.delta;
    const Scalar lp = (Scalar(1) + p.rho) * (Scalar(1) + p.rho);
    const Scalar l0 = Scalar(1) - p.rho * p.rho;
    const Scalar lm = (Scalar(1) - p.rho) * (Scalar(1) - p.rho);

    std::array<BasisVector<Scalar>, 3> out;
    out[0] = {"n+", {h, s, h}, lp, d2 * lp};
    out[1] = {"n0", {-s, Scalar(0), s}, l0, d2 * l0};
    out[2] = {"n-", {h, -s, h}, lm, d2 * lm};
    return out;
}

/// Two-dimensional analogue N2(alpha) = sigma0 + alpha sigma1.
template <typename Scalar>
struct PauliAnalogue {
    Scalar alpha;
    ModeMatrix<Scalar> matrix;
    Scalar det;                                ///< 1 - alpha^2
    Scalar trace;                              ///< 2
    Eigen::Matrix<Scalar, 2, 1> eigenvalues;   ///< (1 + alpha, 1 - alpha)
    Eigen::Matrix<Scalar, 2, 2> eigenvectors;  ///< columns (1, 1)/sqrt2, (-1, 1)/sqrt2
};

template <typename Scalar>
PauliAnalogue<Scalar> pauli_analogue(Scalar alpha) {
    PauliAnalogue<Scalar> out;
    out.alpha = alpha;
    out.matrix << Scalar(1), alpha, alpha, Scalar(1);
    out.det = Scalar(1) - alpha * alpha;
    out.trace = Scalar(2);
    out.eigenvalues << Scalar(1) + alpha, Scalar(1) - alpha;
    using std::sqrt;
    const Scalar s = Scalar(1) / sqrt(Scalar(2));
    out.eigenvectors << s, -s, s, s;
    return out;
}

/// N2(a) N2(b) = (1 + ab) N2((a + b)/(1 + ab)); returns {scale, alpha}.
template <typename Scalar>
std::pair<Scalar, Scalar> pauli_compose(Scalar a, Scalar b) {
    const Scalar k = Scalar(1) + a * b;
    if (k == Scalar(0)) {
        throw SingularError("N2(alpha) composition is singular for alpha * beta = -1");
    }
    return {k, (a + b) / k};
}

}  // namespace fpio
