#pragma once

// Continuous-mode one- and two-photon states emitted inside the cavity and
// their Outside detection amplitudes. Every integral uses the trapezoid rule
// on a grid shared by envelopes, kernels and coefficients.

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "fpio/cavity.hpp"
#include "fpio/outcome.hpp"
#include "fpio/quadrature.hpp"

namespace fpio {

using Cavity = CavitySpec<double>;
using GridPtr = std::shared_ptr<const FrequencyGrid>;

/// Outside detection port. `right` is mode 1 (exits through mirror 2),
/// `left` is mode 2 (exits through mirror 1).
enum class Port { right = 0, left = 1 };

constexpr int index_of(Port p) { return static_cast<int>(p); }

inline constexpr double kNormalizationTolerance = 1e-8;

/// L_i = t_i / D and alpha_i = r_i exp(i omega l/c) for one mode.
struct PropagatedRow {
    ComplexScalar transmission;  ///< L_i
    ComplexScalar reflection;    ///< alpha_i
};

struct PropagatedFactors {
    PropagatedRow mode1;
    PropagatedRow mode2;
};

PropagatedFactors propagated_factors(const Cavity& spec, double omega);

/// M(omega) G(omega) = [[L2, L2 alpha1], [L1 alpha2, L1]].
ModeMatrixd propagated_matrix(const Cavity& spec, double omega);

/// Complex spectral envelope eta(omega) normalized to unit L2 norm on its grid.
class SpectralEnvelope {
public:
    /// Gaussian amplitude whose intensity |eta|^2 has standard deviation `width`.
    static SpectralEnvelope gaussian(GridPtr grid, double center, double width);
    /// Lorentzian amplitude 1/(width/2 - i(omega - center)); `width` is the
    /// FWHM of |eta|^2.
    static SpectralEnvelope lorentzian(GridPtr grid, double center, double width);
    /// Tabulated samples that must already be normalized within 1e-8.
    static SpectralEnvelope from_samples(GridPtr grid, std::vector<ComplexScalar> values);
    /// Tabulated samples rescaled to unit norm.
    static SpectralEnvelope normalized(GridPtr grid, std::vector<ComplexScalar> values);

    const GridPtr& grid() const noexcept { return grid_; }
    const std::vector<ComplexScalar>& values() const noexcept { return values_; }
    ComplexScalar operator[](std::size_t i) const { return values_[i]; }
    double norm_squared() const;

private:
    SpectralEnvelope(GridPtr grid, std::vector<ComplexScalar> values);

    GridPtr grid_;
    std::vector<ComplexScalar> values_;
};

/// Detection envelopes eta_1 (right) and eta_2 (left).
struct DetectionEnvelopes {
    SpectralEnvelope right;
    SpectralEnvelope left;

    const SpectralEnvelope& operator[](Port p) const { return p == Port::right ? right : left; }
};

/// Two-photon emission kernel K_ij(omega, omega'), symmetric under
/// K(omega, omega') = K^T(omega', omega).
///
/// Separable form: K_ij(omega, omega') = c_ij p_i(omega) p_j(omega'), symmetric
/// iff c = c^T. Gridded form: four n x n arrays, n <= 512.
class TwoPhotonKernel {
public:
    struct Separable {
        std::array<std::vector<ComplexScalar>, 2> profiles;
        ModeMatrixd coefficients;
    };
    struct Gridded {
        /// values[i][j](k, l) = K_ij(omega_k, omega_l)
        std::array<std::array<Eigen::MatrixXcd, 2>, 2> values;
    };

    static constexpr std::size_t kMaxGridPoints = 512;

    static TwoPhotonKernel separable(GridPtr grid, std::array<std::vector<ComplexScalar>, 2> profiles,
                                     const ModeMatrixd& coefficients);
    static TwoPhotonKernel gridded(GridPtr grid, std::array<std::array<Eigen::MatrixXcd, 2>, 2> values);
    /// Both photons concentrated on grid point `k`: p(omega_j) = delta_jk / sqrt(w_k).
    static TwoPhotonKernel point(GridPtr grid, std::size_t k, const ModeMatrixd& coefficients);

    const GridPtr& grid() const noexcept { return grid_; }
    bool is_separable() const noexcept { return std::holds_alternative<Separable>(data_); }
    const Separable& as_separable() const { return std::get<Separable>(data_); }
    const Gridded& as_gridded() const { return std::get<Gridded>(data_); }

    /// K(omega_k, omega_l) as a 2x2 matrix.
    ModeMatrixd at(std::size_t k, std::size_t l) const;
    /// sum_ij of the double integral of |K_ij|^2.
    double norm_squared() const;
    /// Materializes a separable kernel (throws DomainError above 512 points).
    TwoPhotonKernel to_gridded() const;
    TwoPhotonKernel scaled(double factor) const;

private:
    TwoPhotonKernel(GridPtr grid, std::variant<Separable, Gridded> data)
        : grid_(std::move(grid)), data_(std::move(data)) {}

    GridPtr grid_;
    std::variant<Separable, Gridded> data_;
};

/// Rescales so that sum_ij of the double integral of |K_ij|^2 is 1.
TwoPhotonKernel normalize_kernel(const TwoPhotonKernel& kernel);

/// P(omega, omega') = [M G K G^T M^T](omega, omega') in closed form.
ModeMatrixd amplitude_matrix(const Cavity& spec, double omega, double omega_prime, const ModeMatrixd& k);

/// <F_a(eta), F_b(eta); Out | psi> =
///   2 (2^-1/2)^delta_ab  double integral of eta_a*(omega) eta_b*(omega') P_ab(omega, omega').
/// Envelopes and kernel must be normalized (1e-8) and share one grid.
ComplexScalar two_photon_amplitude(const Cavity& spec, Port a, Port b, const DetectionEnvelopes& envelopes,
                                   const TwoPhotonKernel& kernel, unsigned threads = 1);

struct CoincidenceRatios {
    Ratio r1;  ///< P(R,L)/P(R,R)
    Ratio r2;  ///< P(R,L)/P(L,L)
    ComplexScalar a_rr;
    ComplexScalar a_rl;
    ComplexScalar a_ll;
};

CoincidenceRatios coincidence_ratios(const Cavity& spec, const DetectionEnvelopes& envelopes,
                                     const TwoPhotonKernel& kernel, unsigned threads = 1);

/// One-photon emission coefficients C_R(omega) = K_1, C_L(omega) = K_2.
struct OnePhotonCoefficients {
    GridPtr grid;
    std::vector<ComplexScalar> right;
    std::vector<ComplexScalar> left;

    /// integral of |C_R|^2 + |C_L|^2
    double norm_squared() const;
};

/// Integral of eta_a*(omega) [M G]_{a i}(omega) K_i(omega).
ComplexScalar one_photon_amplitude(const Cavity& spec, Port a, const SpectralEnvelope& envelope,
                                   const OnePhotonCoefficients& coeffs);

struct OnePhotonDistribution {
    Ratio ratio;  ///< P(R)/P(L)
    double p_r;
    double p_l;
};

OnePhotonDistribution one_photon_distribution(const Cavity& spec, const DetectionEnvelopes& envelopes,
                                              const OnePhotonCoefficients& coeffs);

/// Discrete single-frequency variant: amplitudes [M G]_{a i} K_i at `omega`.
OnePhotonDistribution one_photon_distribution_at(const Cavity& spec, double omega, ComplexScalar c_right,
                                                 ComplexScalar c_left);

}  // namespace fpio
