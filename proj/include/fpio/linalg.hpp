#pragma once

// Dense complex 2x2 / 3x3 algebra shared by every other module. All types
// are fixed-size Eigen matrices templated on the real scalar, so the whole
// core can be instantiated in double or long double.

#include <cmath>
#include <complex>
#include <sstream>
#include <type_traits>

#include <Eigen/Core>
#include <Eigen/LU>

#include "fpio/errors.hpp"

namespace fpio {

template <typename Scalar>
using Complex = std::complex<Scalar>;

template <typename Scalar>
using ModeMatrix = Eigen::Matrix<Complex<Scalar>, 2, 2>;

template <typename Scalar>
using ModeVector = Eigen::Matrix<Complex<Scalar>, 2, 1>;

template <typename Scalar>
using TripleMatrix = Eigen::Matrix<Complex<Scalar>, 3, 3>;

template <typename Scalar>
using TripleVector = Eigen::Matrix<Complex<Scalar>, 3, 1>;

using ComplexScalar = Complex<double>;
using ModeMatrixd = ModeMatrix<double>;
using ModeVectord = ModeVector<double>;
using TripleMatrixd = TripleMatrix<double>;

/// Builds a complex number, refusing NaN or infinite components.
template <typename Scalar>
Complex<Scalar> make_complex(Scalar re, Scalar im = Scalar(0)) {
    if (!std::isfinite(re) || !std::isfinite(im)) {
        throw DomainError("complex scalar must have finite components");
    }
    return {re, im};
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const auto v = m(i, j);
            if (!std::isfinite(std::real(v)) || !std::isfinite(std::imag(v))) return false;
        }
    }
    return true;
}

template <typename DerivedA, typename DerivedB>
auto mat_mul(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    static_assert(int(DerivedA::ColsAtCompileTime) == int(DerivedB::RowsAtCompileTime), "shape mismatch");
    return (a.derived() * b.derived()).eval();
}

template <typename Derived>
auto adjoint(const Eigen::MatrixBase<Derived>& a) {
    return a.adjoint().eval();
}

template <typename Derived>
auto transpose(const Eigen::MatrixBase<Derived>& a) {
    return a.transpose().eval();
}

/// Determinant by cofactor expansion (2x2 and 3x3 only).
template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& a) {
    constexpr int n = Derived::RowsAtCompileTime;
    static_assert(n == Derived::ColsAtCompileTime, "square matrix required");
    static_assert(n == 2 || n == 3, "cofactor determinant implemented for 2x2 and 3x3");
    if constexpr (n == 2) {
        return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    } else {
        return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
               a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
               a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    }
}

template <typename Derived>
auto frobenius_norm(const Eigen::MatrixBase<Derived>& a) {
    return a.norm();
}

/// ||a - b||_F / max(||b||_F, 1).
template <typename DerivedA, typename DerivedB>
auto relative_residual(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    using std::max;
    using Real = typename Eigen::NumTraits<typename DerivedA::Scalar>::Real;
    return (a - b).norm() / max(b.norm(), Real(1));
}

/// Identity residual ||a - I||_F.
template <typename Derived>
auto identity_residual(const Eigen::MatrixBase<Derived>& a) {
    using Plain = typename Derived::PlainObject;
    return (a - Plain::Identity()).norm();
}

template <typename Scalar>
struct HermitianEigen2 {
    /// Descending.
    Eigen::Matrix<Scalar, 2, 1> values;
    /// Column k is the unit eigenvector of values(k).
    ModeMatrix<Scalar> vectors;
};

/// Closed-form eigensystem of a 2x2 Hermitian matrix.
///
/// Input must satisfy ||h - h^dagger||_F <= 1e-12 ||h||_F; the Hermitian
/// part is used. Eigenvalues come out in descending order. When the
/// off-diagonal element vanishes the canonical basis is returned, and a tie
/// puts the vector with the larger first component first.
template <typename Scalar>
HermitianEigen2<Scalar> hermitian_eig2(const ModeMatrix<Scalar>& h) {
    using std::abs;
    using std::sqrt;
    const Scalar scale = h.norm();
    const Scalar asym = (h - h.adjoint()).norm();
    if (asym > Scalar(1e-12) * scale) {
        std::ostringstream msg;
        msg << "matrix is not Hermitian: ||h - h^dagger||_F = " << static_cast<double>(asym)
            << " (relative " << static_cast<double>(asym / scale) << ")";
        throw ValidationError(msg.str());
    }

    const Scalar a = std::real(h(0, 0));
    const Scalar d = std::real(h(1, 1));
    const Complex<Scalar> b = (h(0, 1) + std::conj(h(1, 0))) / Scalar(2);

    HermitianEigen2<Scalar> out;
    if (abs(b) == Scalar(0)) {
        if (a >= d) {
            out.values << a, d;
            out.vectors = ModeMatrix<Scalar>::Identity();
        } else {
            out.values << d, a;
            out.vectors << Scalar(0), Scalar(1), Scalar(1), Scalar(0);
        }
        return out;
    }

    const Scalar mean = (a + d) / Scalar(2);
    const Scalar half_gap = (a - d) / Scalar(2);
    const Scalar radius = std::hypot(half_gap, abs(b));
    const Scalar l1 = mean + radius;
    const Scalar l2 = mean - radius;

    // Pick the row of (h - l1) that avoids cancellation.
    ModeVector<Scalar> v1;
    if (a >= d) {
        v1 << Complex<Scalar>(l1 - d), std::conj(b);
    } else {
        v1 << b, Complex<Scalar>(l1 - a);
    }
    v1.normalize();

    out.values << l1, l2;
    out.vectors.col(0) = v1;
    out.vectors(0, 1) = -std::conj(v1(1));
    out.vectors(1, 1) = std::conj(v1(0));
    return out;
}

}  // namespace fpio
