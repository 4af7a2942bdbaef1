#include "fpio/single_mode.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fpio/errors.hpp"

namespace fpio {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void require_reflectance(double R) { (void)PowerReflectance<double>(R); }

void require_open_reflectance(double R) {
    if (!(R > 0.0 && R < 1.0)) {
        std::ostringstream msg;
        msg << "R must lie in (0, 1), got " << R;
        throw DomainError(msg.str());
    }
}

// num / den for quantities that are already squared magnitudes.
Ratio ratio_of_squares(double num, double den) {
    num = std::max(num, 0.0);
    den = std::max(den, 0.0);
    return Ratio::of_amplitudes(std::sqrt(num), std::sqrt(den));
}

}  // namespace

SingleModeState::SingleModeState(ComplexScalar c_rr, ComplexScalar c_rl, ComplexScalar c_ll)
    : c_rr_(c_rr), c_rl_(c_rl), c_ll_(c_ll) {
    const double n2 = std::norm(c_rr) + std::norm(c_rl) + std::norm(c_ll);
    if (!std::isfinite(n2) || std::abs(n2 - 1.0) > kStateNormTolerance) {
        std::ostringstream msg;
        msg << "state must satisfy |C_RR|^2 + |C_RL|^2 + |C_LL|^2 = 1, got " << n2;
        throw ValidationError(msg.str());
    }
}

SingleModeState SingleModeState::normalized(ComplexScalar c_rr, ComplexScalar c_rl, ComplexScalar c_ll) {
    const double n = std::sqrt(std::norm(c_rr) + std::norm(c_rl) + std::norm(c_ll));
    if (!(n > 0.0) || !std::isfinite(n)) throw ValidationError("cannot normalize a zero or non-finite state");
    return SingleModeState(c_rr / n, c_rl / n, c_ll / n);
}

std::array<NamedState, 3> basis_states() {
    return {NamedState{"n+", SingleModeState(0.5, kInvSqrt2, 0.5)},
            NamedState{"n0", SingleModeState(-kInvSqrt2, 0.0, kInvSqrt2)},
            NamedState{"n-", SingleModeState(0.5, -kInvSqrt2, 0.5)}};
}

SingleModeState basis_state(std::string_view name) {
    for (const auto& s : basis_states()) {
        if (s.name == name) return s.state;
    }
    std::ostringstream msg;
    msg << "unknown basis state '" << name << "' (expected n+, n0 or n-)";
    throw DomainError(msg.str());
}

SingleModeState zeta_state(double z, double y) {
    if (!(z >= 0.0) || !std::isfinite(y)) throw DomainError("zeta needs z >= 0 and finite y");
    const ComplexScalar phase = std::polar(1.0, y);
    if (std::isinf(z)) return SingleModeState(kInvSqrt2 * phase, 0.0, kInvSqrt2 * phase);
    const double c_rl = 1.0 / std::sqrt(1.0 + 2.0 * z * z);
    const ComplexScalar c = z * phase * c_rl;
    return SingleModeState(c, c_rl, c);
}

Ratio ratio_single_mode(const SingleModeState& s, double R, double x) {
    require_reflectance(R);
    const ComplexScalar alpha = -std::sqrt(R) * std::polar(1.0, x);
    const ComplexScalar num = kSqrt2 * (s.c_rr() + s.c_ll()) * alpha + s.c_rl() * (1.0 + alpha * alpha);
    const ComplexScalar den = s.c_rr() + s.c_ll() * alpha * alpha + kSqrt2 * s.c_rl() * alpha;
    return Ratio::of_amplitudes(num, den);
}

Ratio limit_small_z(double R, double x) {
    require_reflectance(R);
    const double q = 1.0 + 2.0 * R * std::cos(2.0 * x) + R * R;
    if (R == 0.0) return Ratio::infinite();
    return Ratio::finite(q / (2.0 * R));
}

Ratio limit_large_z(double R, double x) {
    require_reflectance(R);
    const double q = 1.0 + 2.0 * R * std::cos(2.0 * x) + R * R;
    return ratio_of_squares(8.0 * R, q);
}

Ratio ratio_zeta_form(const ZetaParams& p) {
    require_reflectance(p.R);
    if (!(p.z >= 0.0)) throw DomainError("zeta modulus z must be >= 0");
    if (std::isinf(p.z)) return limit_large_z(p.R, p.x);
    const double R = p.R;
    const double z = p.z;
    const double s = std::sqrt(2.0 * R);
    const double q = 1.0 + 2.0 * R * std::cos(2.0 * p.x) + R * R;
    const double num = 8.0 * R * z * z - 4.0 * s * (std::cos(p.x + p.y) + R * std::cos(p.x - p.y)) * z + q;
    const double den = q * z * z - 2.0 * s * (std::cos(p.x - p.y) + R * std::cos(p.x + p.y)) * z + 2.0 * R;
    return ratio_of_squares(num, den);
}

Parity parity_of(long n) { return (n % 2 == 0) ? Parity::even : Parity::odd; }

double coupling_constant(double R) {
    require_reflectance(R);
    return std::sqrt(2.0 * R) / (1.0 + R);
}

Ratio resonance_ratio(double R, double z, double y, Parity parity) {
    require_open_reflectance(R);
    if (!(z >= 0.0)) throw DomainError("zeta modulus z must be >= 0");
    const double F = coupling_constant(R);
    if (std::isinf(z)) return Ratio::finite(4.0 * F * F);
    const double sgn = parity == Parity::even ? 1.0 : -1.0;
    const double c = std::cos(y);
    const double num = 4.0 * F * F * z * z - sgn * 4.0 * F * z * c + 1.0;
    const double den = z * z - sgn * 2.0 * F * z * c + F * F;
    return ratio_of_squares(num, den);
}

ResonanceShape pole_zero(double R, double y, Parity parity) {
    require_open_reflectance(R);
    const double F = coupling_constant(R);
    const double sgn = parity == Parity::even ? 1.0 : -1.0;
    const ComplexScalar plus = std::polar(1.0, y);
    const ComplexScalar minus = std::polar(1.0, -y);
    return {F,
            {sgn * plus / (2.0 * F), sgn * minus / (2.0 * F)},
            {sgn * F * plus, sgn * F * minus}};
}

OutcomeDistribution distribution_symmetric(Ratio ratio) {
    if (ratio.is_indeterminate()) throw SingularError("outcome distribution undefined: indeterminate ratio");
    if (ratio.is_infinite()) return {0.0, 1.0, 0.0};
    const double r = ratio.value();
    const double side = 1.0 / (2.0 + r);
    return {side, r / (2.0 + r), side};
}

ComplexScalar single_mode_amplitude(const SingleModeState& s, double R, double x, Port a, Port b) {
    const Cavity spec = symmetric_cavity(R, 1.0);
    ModeMatrixd kbar;
    kbar << s.c_rr() * kInvSqrt2, 0.5 * s.c_rl(),
            0.5 * s.c_rl(), s.c_ll() * kInvSqrt2;
    const ModeMatrixd p = amplitude_matrix(spec, x, x, kbar);
    const double prefactor = (a == b) ? kSqrt2 : 2.0;
    return prefactor * p(index_of(a), index_of(b));
}

}  // namespace fpio
