#pragma once

// Discrete single-mode two-photon states in a symmetric cavity
// (r1 = r2 = -sqrt(R), t = i sqrt(1 - R)) and their closed-form
// coincidence ratios. x = omega l / c throughout.

#include <array>
#include <complex>
#include <string_view>

#include "fpio/linalg.hpp"
#include "fpio/outcome.hpp"
#include "fpio/photon_states.hpp"

namespace fpio {

inline constexpr double kStateNormTolerance = 1e-12;

/// Emission amplitudes (C_RR, C_RL, C_LL) with K11 = C_RR, K22 = C_LL, 2 K12 = C_RL.
class SingleModeState {
public:
    /// Throws ValidationError unless |c_rr|^2 + |c_rl|^2 + |c_ll|^2 = 1 within 1e-12.
    SingleModeState(ComplexScalar c_rr, ComplexScalar c_rl, ComplexScalar c_ll);
    /// Rescales to unit norm; throws ValidationError for the zero triple.
    static SingleModeState normalized(ComplexScalar c_rr, ComplexScalar c_rl, ComplexScalar c_ll);

    ComplexScalar c_rr() const noexcept { return c_rr_; }
    ComplexScalar c_rl() const noexcept { return c_rl_; }
    ComplexScalar c_ll() const noexcept { return c_ll_; }

private:
    ComplexScalar c_rr_;
    ComplexScalar c_rl_;
    ComplexScalar c_ll_;
};

struct NamedState {
    std::string_view name;
    SingleModeState state;
};

/// n+ = (1/2, 1/sqrt2, 1/2), n0 = (-1/sqrt2, 0, 1/sqrt2), n- = (1/2, -1/sqrt2, 1/2).
std::array<NamedState, 3> basis_states();

/// Looks up "n+", "n0" or "n-"; throws DomainError otherwise.
SingleModeState basis_state(std::string_view name);

/// C_RR = C_LL = zeta C_RL with zeta = z e^{iy}; z = +inf gives C_RL = 0.
SingleModeState zeta_state(double z, double y);

/// P(R,L)/P(R,R) for a single-mode state.
Ratio ratio_single_mode(const SingleModeState& state, double R, double x);

struct ZetaParams {
    double x;
    double y;
    double z;  ///< |zeta| >= 0; +infinity selects the z -> infinity limit
    double R;
};

/// Closed form of ratio_single_mode on zeta_state(z, y).
Ratio ratio_zeta_form(const ZetaParams& p);

/// (1 + 2R cos 2x + R^2) / (2R); infinite at R = 0.
Ratio limit_small_z(double R, double x);
/// 8R / (1 + 2R cos 2x + R^2); zero at R = 0.
Ratio limit_large_z(double R, double x);

enum class Parity { even, odd };

/// Parity of N in x = pi N.
Parity parity_of(long n);

/// F = sqrt(2R) / (1 + R).
double coupling_constant(double R);

/// Ratio at x = pi N: [4F^2 z^2 - s 4F z cos y + 1] / [z^2 - s 2F z cos y + F^2], s = (-1)^N.
/// Requires R in (0, 1).
Ratio resonance_ratio(double R, double z, double y, Parity parity);

struct ResonanceShape {
    double F;
    std::array<ComplexScalar, 2> zeros;  ///< z_+^u, z_-^u, |z^u| = 1/(2F)
    std::array<ComplexScalar, 2> poles;  ///< z_+^d, z_-^d, |z^d| = F
};

/// Roots of the resonance_ratio polynomials: z^u = s e^{+-iy}/(2F), z^d = s F e^{+-iy}.
ResonanceShape pole_zero(double R, double y, Parity parity = Parity::odd);

/// P(R,L) = r/(2 + r), P(R,R) = P(L,L) = 1/(2 + r); infinite r gives P(R,L) = 1.
OutcomeDistribution distribution_symmetric(Ratio ratio);

/// 2 (2^-1/2)^delta_ab [M G Kbar G^T M^T]_ab with Kbar_ii = K_ii / sqrt2.
ComplexScalar single_mode_amplitude(const SingleModeState& state, double R, double x, Port a, Port b);

}  // namespace fpio
