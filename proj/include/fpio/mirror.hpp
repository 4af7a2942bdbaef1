#pragma once

#include <cmath>
#include <sstream>

#include "fpio/linalg.hpp"

namespace fpio {

/// Intensity reflectance R in [0, 1).
template <typename Scalar>
class PowerReflectance {
public:
    explicit PowerReflectance(Scalar value) : value_(value) {
        if (!(value >= Scalar(0) && value < Scalar(1))) {
            std::ostringstream msg;
            msg << "power reflectance must lie in [0, 1), got " << static_cast<double>(value);
            throw DomainError(msg.str());
        }
    }

    Scalar value() const noexcept { return value_; }

private:
    Scalar value_;
};

template <typename Scalar>
class MirrorCoefficients;

template <typename Scalar>
MirrorCoefficients<Scalar> from_power_reflectance(PowerReflectance<Scalar> reflectance);

template <typename Scalar>
MirrorCoefficients<Scalar> validate(Complex<Scalar> r, Complex<Scalar> t);

/// Amplitude reflection/transmission pair of a lossless mirror:
/// |r|^2 + |t|^2 = 1 and t r* + r t* = 0. Only obtainable through
/// from_power_reflectance() or validate().
template <typename Scalar>
class MirrorCoefficients {
public:
    const Complex<Scalar>& r() const noexcept { return r_; }
    const Complex<Scalar>& t() const noexcept { return t_; }
    Scalar power_reflectance() const { return std::norm(r_); }

    template <typename Other>
    MirrorCoefficients<Other> cast() const {
        return MirrorCoefficients<Other>(Complex<Other>(Other(r_.real()), Other(r_.imag())),
                                         Complex<Other>(Other(t_.real()), Other(t_.imag())));
    }

private:
    MirrorCoefficients(Complex<Scalar> r, Complex<Scalar> t) : r_(r), t_(t) {}

    template <typename>
    friend class MirrorCoefficients;
    friend MirrorCoefficients from_power_reflectance<Scalar>(PowerReflectance<Scalar>);
    friend MirrorCoefficients validate<Scalar>(Complex<Scalar>, Complex<Scalar>);

    Complex<Scalar> r_;
    Complex<Scalar> t_;
};

/// Symmetric-cavity phase convention: t = i sqrt(1 - R), r = -sqrt(R).
template <typename Scalar>
MirrorCoefficients<Scalar> from_power_reflectance(PowerReflectance<Scalar> reflectance) {
    using std::sqrt;
    const Scalar R = reflectance.value();
    return MirrorCoefficients<Scalar>(Complex<Scalar>(-sqrt(R), Scalar(0)),
                                      Complex<Scalar>(Scalar(0), sqrt(Scalar(1) - R)));
}

template <typename Scalar>
MirrorCoefficients<Scalar> from_power_reflectance(Scalar R) {
    return from_power_reflectance(PowerReflectance<Scalar>(R));
}

inline constexpr double kMirrorValidationTolerance = 1e-10;

/// Accepts an arbitrary-phase (r, t) pair iff both lossless identities hold
/// within 1e-10.
template <typename Scalar>
MirrorCoefficients<Scalar> validate(Complex<Scalar> r, Complex<Scalar> t) {
    using std::abs;
    (void)make_complex(r.real(), r.imag());
    (void)make_complex(t.real(), t.imag());
    const Scalar tol = Scalar(kMirrorValidationTolerance);

    const Scalar energy = std::norm(r) + std::norm(t) - Scalar(1);
    if (abs(energy) > tol) {
        std::ostringstream msg;
        msg << "lossless mirror violates |r|^2 + |t|^2 = 1 (off by " << static_cast<double>(energy) << ")";
        throw ValidationError(msg.str());
    }
    const Complex<Scalar> cross = t * std::conj(r) + r * std::conj(t);
    if (abs(cross) > tol) {
        std::ostringstream msg;
        msg << "lossless mirror violates t r* + r t* = 0 (|value| = " << static_cast<double>(abs(cross)) << ")";
        throw ValidationError(msg.str());
    }
    return MirrorCoefficients<Scalar>(r, t);
}

}  // namespace fpio
