#pragma once

// Frequency-dependent matrices of a planar two-mirror cavity:
//
//   b = B a   (Inside from Input)      c = C a   (Outside from Input)
//   c = M b   (Outside from Inside)    [b_i, b_j^dagger] = G_ij = (B B^dagger)_ij
//
// with D = 1 - r1 r2 exp(2 i omega l/c). Mode 1 propagates towards mirror 2
// (right), mode 2 towards mirror 1 (left).

#include <cmath>
#include <sstream>

#include "fpio/linalg.hpp"
#include "fpio/mirror.hpp"

namespace fpio {

template <typename Scalar>
class CavitySpec {
public:
    CavitySpec(MirrorCoefficients<Scalar> mirror1, MirrorCoefficients<Scalar> mirror2, Scalar length_over_c)
        : mirror1_(mirror1), mirror2_(mirror2), length_over_c_(length_over_c) {
        if (!(length_over_c > Scalar(0)) || !std::isfinite(length_over_c)) {
            std::ostringstream msg;
            msg << "length_over_c must be finite and > 0, got " << static_cast<double>(length_over_c);
            throw DomainError(msg.str());
        }
    }

    const MirrorCoefficients<Scalar>& mirror1() const noexcept { return mirror1_; }
    const MirrorCoefficients<Scalar>& mirror2() const noexcept { return mirror2_; }
    Scalar length_over_c() const noexcept { return length_over_c_; }

    bool is_symmetric() const {
        return mirror1_.r() == mirror2_.r() && mirror1_.t() == mirror2_.t();
    }

    template <typename Other>
    CavitySpec<Other> cast() const {
        return CavitySpec<Other>(mirror1_.template cast<Other>(), mirror2_.template cast<Other>(),
                                 Other(length_over_c_));
    }

private:
    MirrorCoefficients<Scalar> mirror1_;
    MirrorCoefficients<Scalar> mirror2_;
    Scalar length_over_c_;
};

/// Two identical mirrors in the from_power_reflectance() convention.
template <typename Scalar>
CavitySpec<Scalar> symmetric_cavity(Scalar R, Scalar length_over_c = Scalar(1)) {
    const auto m = from_power_reflectance(PowerReflectance<Scalar>(R));
    return CavitySpec<Scalar>(m, m, length_over_c);
}

template <typename Scalar>
struct PhasePoint {
    Scalar omega;
    Scalar x;  ///< omega * l / c
};

template <typename Scalar>
PhasePoint<Scalar> phase_point(const CavitySpec<Scalar>& spec, Scalar omega) {
    return {omega, omega * spec.length_over_c()};
}

inline constexpr double kResonanceFlagThreshold = 1e-12;
inline constexpr double kInversionFloor = 1e-300;

/// D(omega) = 1 - r1 r2 exp(2 i omega l/c).
template <typename Scalar>
Complex<Scalar> round_trip_denominator(const CavitySpec<Scalar>& spec, Scalar omega) {
    const Scalar x = phase_point(spec, omega).x;
    return Scalar(1) - spec.mirror1().r() * spec.mirror2().r() * std::polar(Scalar(1), Scalar(2) * x);
}

/// True when |D| < 1e-12 (only reachable with near-unity mirrors).
template <typename Scalar>
bool is_resonant(const Complex<Scalar>& denominator) {
    return std::abs(denominator) < Scalar(kResonanceFlagThreshold);
}

namespace detail {

template <typename Scalar>
Complex<Scalar> checked_denominator(const CavitySpec<Scalar>& spec, Scalar omega) {
    const Complex<Scalar> d = round_trip_denominator(spec, omega);
    if (std::abs(d) < Scalar(kInversionFloor)) {
        std::ostringstream msg;
        msg << "round-trip denominator vanishes at omega = " << static_cast<double>(omega);
        throw ResonanceError(msg.str());
    }
    return d;
}

}  // namespace detail

/// Inside-from-Input matrix B(omega).
template <typename Scalar>
ModeMatrix<Scalar> inside_matrix(const CavitySpec<Scalar>& spec, Scalar omega) {
    const Complex<Scalar> d = detail::checked_denominator(spec, omega);
    const Complex<Scalar> phase = std::polar(Scalar(1), phase_point(spec, omega).x);
    const Complex<Scalar> b11 = spec.mirror1().t() / d;
    const Complex<Scalar> b22 = spec.mirror2().t() / d;
    ModeMatrix<Scalar> b;
    b << b11, spec.mirror1().r() * phase * b22,
         spec.mirror2().r() * phase * b11, b22;
    return b;
}

/// Outside-from-Input matrix C(omega); unitary for lossless mirrors.
template <typename Scalar>
ModeMatrix<Scalar> outside_matrix(const CavitySpec<Scalar>& spec, Scalar omega) {
    const Complex<Scalar> d = detail::checked_denominator(spec, omega);
    const Scalar x = phase_point(spec, omega).x;
    const auto& m1 = spec.mirror1();
    const auto& m2 = spec.mirror2();
    const Complex<Scalar> diag = m1.t() * m2.t() / d;
    const Complex<Scalar> c12 =
        (m2.r() * std::polar(Scalar(1), -x) + m1.r() * std::polar(Scalar(1), x + Scalar(2) * std::arg(m2.t()))) / d;
    const Complex<Scalar> c21 =
        (m1.r() * std::polar(Scalar(1), -x) + m2.r() * std::polar(Scalar(1), x + Scalar(2) * std::arg(m1.t()))) / d;
    ModeMatrix<Scalar> c;
    c << diag, c12, c21, diag;
    return c;
}

/// Outside-from-Inside matrix M = C B^-1. Not unitary; M G M^dagger = I.
template <typename Scalar>
ModeMatrix<Scalar> inside_to_outside_matrix(const CavitySpec<Scalar>& spec, Scalar omega) {
    const auto& m1 = spec.mirror1();
    const auto& m2 = spec.mirror2();
    if (m1.t() == Complex<Scalar>(0) || m2.t() == Complex<Scalar>(0)) {
        throw SingularError("inside-to-outside matrix undefined: a mirror has zero transmission");
    }
    const Complex<Scalar> back = std::polar(Scalar(1), -phase_point(spec, omega).x);
    ModeMatrix<Scalar> m;
    m << Scalar(1) / std::conj(m2.t()), m2.r() / m2.t() * back,
         m1.r() / m1.t() * back, Scalar(1) / std::conj(m1.t());
    return m;
}

/// Anomalous commutator metric G = B B^dagger, in closed form over |D|^2.
template <typename Scalar>
ModeMatrix<Scalar> commutator_metric(const CavitySpec<Scalar>& spec, Scalar omega) {
    const Complex<Scalar> d = detail::checked_denominator(spec, omega);
    const Scalar d2 = std::norm(d);
    const Complex<Scalar> phase = std::polar(Scalar(1), phase_point(spec, omega).x);
    const Complex<Scalar> r1 = spec.mirror1().r();
    const Complex<Scalar> r2 = spec.mirror2().r();
    const Scalar diag = (Scalar(1) - std::norm(r1 * r2)) / d2;
    const Complex<Scalar> g12 =
        (r1 * phase * (Scalar(1) - std::norm(r2)) + std::conj(r2) * std::conj(phase) * (Scalar(1) - std::norm(r1))) / d2;
    ModeMatrix<Scalar> g;
    g << Complex<Scalar>(diag), g12, std::conj(g12), Complex<Scalar>(diag);
    return g;
}

/// G^-1 = adj(G) / det G with det G = |t1 t2|^2 / |D|^2 (= |det B|^2).
template <typename Scalar>
ModeMatrix<Scalar> inverse_metric(const CavitySpec<Scalar>& spec, Scalar omega) {
    const Scalar tt = std::norm(spec.mirror1().t() * spec.mirror2().t());
    if (tt == Scalar(0)) {
        throw SingularError("metric is singular: a mirror has zero transmission");
    }
    const Scalar det = tt / std::norm(detail::checked_denominator(spec, omega));
    const ModeMatrix<Scalar> g = commutator_metric(spec, omega);
    ModeMatrix<Scalar> adj;
    adj << g(1, 1), -g(0, 1), -g(1, 0), g(0, 0);
    return adj / det;
}

/// Inverse photon mean flight time (c/l)(1 - |r1 r2|) / (2 |r1 r2|^(1/2)), rad/s.
template <typename Scalar>
Scalar cavity_linewidth(const CavitySpec<Scalar>& spec) {
    using std::sqrt;
    const Scalar rr = std::abs(spec.mirror1().r() * spec.mirror2().r());
    if (rr == Scalar(0)) {
        throw SingularError("cavity linewidth undefined for |r1 r2| = 0");
    }
    return (Scalar(1) - rr) / (Scalar(2) * sqrt(rr) * spec.length_over_c());
}

}  // namespace fpio
