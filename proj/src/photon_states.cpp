#include "fpio/photon_states.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fpio/errors.hpp"
#include "fpio/parallel.hpp"

namespace fpio {

namespace {

void require_grid(const GridPtr& grid) {
    if (!grid) throw DomainError("frequency grid is null");
}

bool same_grid(const GridPtr& a, const GridPtr& b) { return a == b || (a && b && *a == *b); }

void require_size(std::size_t got, const GridPtr& grid, const char* what) {
    if (got != grid->size()) {
        std::ostringstream msg;
        msg << what << " has " << got << " samples but the grid has " << grid->size();
        throw ValidationError(msg.str());
    }
}

double l2_norm_squared(const std::vector<ComplexScalar>& v, const FrequencyGrid& grid) {
    std::vector<double> mag(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) mag[i] = std::norm(v[i]);
    return weighted_sum(std::span<const double>(mag), grid.weights());
}

void require_normalized(double norm_squared, const char* what) {
    if (std::abs(norm_squared - 1.0) > kNormalizationTolerance) {
        std::ostringstream msg;
        msg << what << " is not normalized (norm^2 = " << norm_squared << ")";
        throw ValidationError(msg.str());
    }
}

std::vector<ModeMatrixd> propagated_on_grid(const Cavity& spec, const FrequencyGrid& grid) {
    std::vector<ModeMatrixd> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = propagated_matrix(spec, grid[i]);
    return out;
}

}  // namespace

PropagatedFactors propagated_factors(const Cavity& spec, double omega) {
    const ComplexScalar d = detail::checked_denominator(spec, omega);
    const ComplexScalar phase = std::polar(1.0, phase_point(spec, omega).x);
    return {{spec.mirror1().t() / d, spec.mirror1().r() * phase},
            {spec.mirror2().t() / d, spec.mirror2().r() * phase}};
}

ModeMatrixd propagated_matrix(const Cavity& spec, double omega) {
    const auto f = propagated_factors(spec, omega);
    ModeMatrixd mg;
    mg << f.mode2.transmission, f.mode2.transmission * f.mode1.reflection,
          f.mode1.transmission * f.mode2.reflection, f.mode1.transmission;
    return mg;
}

// --- SpectralEnvelope ------------------------------------------------------

SpectralEnvelope::SpectralEnvelope(GridPtr grid, std::vector<ComplexScalar> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    require_grid(grid_);
    require_size(values_.size(), grid_, "envelope");
    for (const auto& v : values_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw DomainError("envelope samples must be finite");
    }
}

double SpectralEnvelope::norm_squared() const { return l2_norm_squared(values_, *grid_); }

SpectralEnvelope SpectralEnvelope::from_samples(GridPtr grid, std::vector<ComplexScalar> values) {
    SpectralEnvelope env(std::move(grid), std::move(values));
    require_normalized(env.norm_squared(), "spectral envelope");
    return env;
}

SpectralEnvelope SpectralEnvelope::normalized(GridPtr grid, std::vector<ComplexScalar> values) {
    SpectralEnvelope env(std::move(grid), std::move(values));
    const double n2 = env.norm_squared();
    if (!(n2 > 0.0)) throw ValidationError("spectral envelope vanishes on its grid");
    const double s = 1.0 / std::sqrt(n2);
    for (auto& v : env.values_) v *= s;
    return env;
}

SpectralEnvelope SpectralEnvelope::gaussian(GridPtr grid, double center, double width) {
    require_grid(grid);
    if (!(width > 0.0)) throw DomainError("gaussian envelope width must be > 0");
    std::vector<ComplexScalar> v(grid->size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double u = ((*grid)[i] - center) / width;
        v[i] = std::exp(-0.25 * u * u);
    }
    return normalized(std::move(grid), std::move(v));
}

SpectralEnvelope SpectralEnvelope::lorentzian(GridPtr grid, double center, double width) {
    require_grid(grid);
    if (!(width > 0.0)) throw DomainError("lorentzian envelope width must be > 0");
    std::vector<ComplexScalar> v(grid->size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = 1.0 / ComplexScalar(0.5 * width, -((*grid)[i] - center));
    }
    return normalized(std::move(grid), std::move(v));
}

// --- TwoPhotonKernel ---------------------------------------------------------

TwoPhotonKernel TwoPhotonKernel::separable(GridPtr grid, std::array<std::vector<ComplexScalar>, 2> profiles,
                                           const ModeMatrixd& coefficients) {
    require_grid(grid);
    for (const auto& p : profiles) require_size(p.size(), grid, "kernel profile");
    if (!all_finite(coefficients)) throw DomainError("kernel coefficients must be finite");
    const double asym = (coefficients - coefficients.transpose()).norm();
    if (asym > 1e-12 * coefficients.norm()) {
        std::ostringstream msg;
        msg << "kernel violates K(w, w') = K^T(w', w): coefficient asymmetry " << asym;
        throw ValidationError(msg.str());
    }
    ModeMatrixd c = coefficients;
    c(0, 1) = c(1, 0) = 0.5 * (coefficients(0, 1) + coefficients(1, 0));
    return TwoPhotonKernel(std::move(grid), Separable{std::move(profiles), c});
}

TwoPhotonKernel TwoPhotonKernel::gridded(GridPtr grid, std::array<std::array<Eigen::MatrixXcd, 2>, 2> values) {
    require_grid(grid);
    const auto n = static_cast<Eigen::Index>(grid->size());
    if (grid->size() > kMaxGridPoints) {
        std::ostringstream msg;
        msg << "gridded kernel limited to " << kMaxGridPoints << " points per axis, got " << grid->size();
        throw DomainError(msg.str());
    }
    double scale = 0.0;
    for (const auto& row : values) {
        for (const auto& m : row) {
            if (m.rows() != n || m.cols() != n) throw ValidationError("gridded kernel block does not match grid size");
            if (!all_finite(m)) throw DomainError("kernel samples must be finite");
            scale = std::max(scale, m.cwiseAbs().maxCoeff());
        }
    }
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double asym = (values[i][j] - values[j][i].transpose()).cwiseAbs().maxCoeff();
            if (asym > 1e-12 * scale) {
                std::ostringstream msg;
                msg << "kernel violates K(w, w') = K^T(w', w): max asymmetry " << asym;
                throw ValidationError(msg.str());
            }
        }
    }
    return TwoPhotonKernel(std::move(grid), Gridded{std::move(values)});
}

TwoPhotonKernel TwoPhotonKernel::point(GridPtr grid, std::size_t k, const ModeMatrixd& coefficients) {
    require_grid(grid);
    if (k >= grid->size()) throw DomainError("point kernel index outside grid");
    std::vector<ComplexScalar> p(grid->size(), 0.0);
    p[k] = 1.0 / std::sqrt(grid->weights()[k]);
    return separable(std::move(grid), {p, p}, coefficients);
}

ModeMatrixd TwoPhotonKernel::at(std::size_t k, std::size_t l) const {
    ModeMatrixd out;
    if (const auto* s = std::get_if<Separable>(&data_)) {
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) out(i, j) = s->coefficients(i, j) * s->profiles[i][k] * s->profiles[j][l];
        }
    } else {
        const auto& g = std::get<Gridded>(data_);
        const auto kk = static_cast<Eigen::Index>(k);
        const auto ll = static_cast<Eigen::Index>(l);
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) out(i, j) = g.values[i][j](kk, ll);
        }
    }
    return out;
}

double TwoPhotonKernel::norm_squared() const {
    const auto w = grid_->weights();
    if (const auto* s = std::get_if<Separable>(&data_)) {
        const double n1 = l2_norm_squared(s->profiles[0], *grid_);
        const double n2 = l2_norm_squared(s->profiles[1], *grid_);
        const std::array<double, 2> n{n1, n2};
        double total = 0.0;
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) total += std::norm(s->coefficients(i, j)) * n[i] * n[j];
        }
        return total;
    }
    const auto& g = std::get<Gridded>(data_);
    const Eigen::Map<const Eigen::VectorXd> wv(w.data(), static_cast<Eigen::Index>(w.size()));
    double total = 0.0;
    for (const auto& row : g.values) {
        for (const auto& m : row) total += wv.dot(m.cwiseAbs2() * wv);
    }
    return total;
}

TwoPhotonKernel TwoPhotonKernel::to_gridded() const {
    if (!is_separable()) return *this;
    if (grid_->size() > kMaxGridPoints) {
        throw DomainError("cannot materialize a kernel on more than 512 points per axis");
    }
    const auto& s = as_separable();
    const auto n = static_cast<Eigen::Index>(grid_->size());
    std::array<std::array<Eigen::MatrixXcd, 2>, 2> v;
    for (int i = 0; i < 2; ++i) {
        const Eigen::Map<const Eigen::VectorXcd> pi(s.profiles[i].data(), n);
        for (int j = 0; j < 2; ++j) {
            const Eigen::Map<const Eigen::VectorXcd> pj(s.profiles[j].data(), n);
            v[i][j] = s.coefficients(i, j) * pi * pj.transpose();
        }
    }
    return gridded(grid_, std::move(v));
}

TwoPhotonKernel TwoPhotonKernel::scaled(double factor) const {
    if (const auto* s = std::get_if<Separable>(&data_)) {
        return TwoPhotonKernel(grid_, Separable{s->profiles, s->coefficients * factor});
    }
    Gridded g = std::get<Gridded>(data_);
    for (auto& row : g.values) {
        for (auto& m : row) m *= factor;
    }
    return TwoPhotonKernel(grid_, std::move(g));
}

TwoPhotonKernel normalize_kernel(const TwoPhotonKernel& kernel) {
    const double n2 = kernel.norm_squared();
    if (!(n2 > 0.0)) throw ValidationError("cannot normalize an all-zero kernel");
    return kernel.scaled(1.0 / std::sqrt(n2));
}

// --- amplitudes ----------------------------------------------------------------

ModeMatrixd amplitude_matrix(const Cavity& spec, double omega, double omega_prime, const ModeMatrixd& k) {
    const auto f = propagated_factors(spec, omega);
    const auto g = propagated_factors(spec, omega_prime);
    const ComplexScalar l1 = f.mode1.transmission, l2 = f.mode2.transmission;
    const ComplexScalar a1 = f.mode1.reflection, a2 = f.mode2.reflection;
    const ComplexScalar l1p = g.mode1.transmission, l2p = g.mode2.transmission;
    const ComplexScalar a1p = g.mode1.reflection, a2p = g.mode2.reflection;
    const ComplexScalar k11 = k(0, 0), k12 = k(0, 1), k21 = k(1, 0), k22 = k(1, 1);

    ModeMatrixd p;
    p(0, 0) = l2 * l2p * (k11 + k22 * a1 * a1p + k12 * a1p + k21 * a1);
    p(0, 1) = l2 * l1p * (k11 * a2p + k22 * a1 + k12 + k21 * a1 * a2p);
    p(1, 0) = l1 * l2p * (k22 * a1p + k11 * a2 + k21 + k12 * a2 * a1p);
    p(1, 1) = l1 * l1p * (k22 + k11 * a2 * a2p + k21 * a2p + k12 * a2);
    return p;
}

ComplexScalar two_photon_amplitude(const Cavity& spec, Port a, Port b, const DetectionEnvelopes& envelopes,
                                   const TwoPhotonKernel& kernel, unsigned threads) {
    const SpectralEnvelope& eta_a = envelopes[a];
    const SpectralEnvelope& eta_b = envelopes[b];
    const GridPtr& grid = kernel.grid();
    if (!same_grid(eta_a.grid(), grid) || !same_grid(eta_b.grid(), grid)) {
        throw ValidationError("envelopes and kernel must share one frequency grid");
    }
    require_normalized(eta_a.norm_squared(), "detection envelope");
    require_normalized(eta_b.norm_squared(), "detection envelope");
    require_normalized(kernel.norm_squared(), "two-photon kernel");

    const int ia = index_of(a);
    const int ib = index_of(b);
    const double prefactor = (a == b) ? std::numbers::sqrt2 : 2.0;
    const auto mg = propagated_on_grid(spec, *grid);
    const auto w = grid->weights();
    const std::size_t n = grid->size();

    // u_k = w_k eta_a*(k) [MG]_{a,:}(k), v_l = w_l eta_b*(l) [MG]_{b,:}(l)
    std::vector<Eigen::RowVector2cd> u(n), v(n);
    for (std::size_t k = 0; k < n; ++k) {
        u[k] = w[k] * std::conj(eta_a[k]) * mg[k].row(ia);
        v[k] = w[k] * std::conj(eta_b[k]) * mg[k].row(ib);
    }

    if (kernel.is_separable()) {
        const auto& s = kernel.as_separable();
        std::array<ComplexScalar, 2> ia_int{}, ib_int{};
        for (int i = 0; i < 2; ++i) {
            std::vector<ComplexScalar> ta(n), tb(n);
            for (std::size_t k = 0; k < n; ++k) {
                ta[k] = u[k](i) * s.profiles[i][k];
                tb[k] = v[k](i) * s.profiles[i][k];
            }
            ia_int[i] = pairwise_sum(std::span<const ComplexScalar>(ta));
            ib_int[i] = pairwise_sum(std::span<const ComplexScalar>(tb));
        }
        ComplexScalar total = 0.0;
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) total += s.coefficients(i, j) * ia_int[i] * ib_int[j];
        }
        return prefactor * total;
    }

    const auto& g = kernel.as_gridded();
    std::vector<ComplexScalar> rows(n);
    parallel_for(n, threads, [&](std::size_t k) {
        std::vector<ComplexScalar> terms(n);
        const auto kk = static_cast<Eigen::Index>(k);
        for (std::size_t l = 0; l < n; ++l) {
            const auto ll = static_cast<Eigen::Index>(l);
            ComplexScalar acc = 0.0;
            for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) acc += u[k](i) * g.values[i][j](kk, ll) * v[l](j);
            }
            terms[l] = acc;
        }
        rows[k] = pairwise_sum(std::span<const ComplexScalar>(terms));
    });
    return prefactor * pairwise_sum(std::span<const ComplexScalar>(rows));
}

CoincidenceRatios coincidence_ratios(const Cavity& spec, const DetectionEnvelopes& envelopes,
                                     const TwoPhotonKernel& kernel, unsigned threads) {
    const ComplexScalar rr = two_photon_amplitude(spec, Port::right, Port::right, envelopes, kernel, threads);
    const ComplexScalar rl = two_photon_amplitude(spec, Port::right, Port::left, envelopes, kernel, threads);
    const ComplexScalar ll = two_photon_amplitude(spec, Port::left, Port::left, envelopes, kernel, threads);
    return {Ratio::of_amplitudes(rl, rr), Ratio::of_amplitudes(rl, ll), rr, rl, ll};
}

// --- one photon ----------------------------------------------------------------

double OnePhotonCoefficients::norm_squared() const {
    require_grid(grid);
    require_size(right.size(), grid, "C_R");
    require_size(left.size(), grid, "C_L");
    return l2_norm_squared(right, *grid) + l2_norm_squared(left, *grid);
}

ComplexScalar one_photon_amplitude(const Cavity& spec, Port a, const SpectralEnvelope& envelope,
                                   const OnePhotonCoefficients& coeffs) {
    if (!same_grid(envelope.grid(), coeffs.grid)) {
        throw ValidationError("envelope and one-photon coefficients must share one frequency grid");
    }
    require_normalized(coeffs.norm_squared(), "one-photon coefficients");
    const int ia = index_of(a);
    const FrequencyGrid& grid = *coeffs.grid;
    std::vector<ComplexScalar> integrand(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const ModeMatrixd mg = propagated_matrix(spec, grid[k]);
        integrand[k] = std::conj(envelope[k]) * (mg(ia, 0) * coeffs.right[k] + mg(ia, 1) * coeffs.left[k]);
    }
    return weighted_sum(std::span<const ComplexScalar>(integrand), grid.weights());
}

namespace {

OnePhotonDistribution distribution_from(ComplexScalar right, ComplexScalar left) {
    const double pr = std::norm(right);
    const double pl = std::norm(left);
    if (!(pr + pl > 0.0)) throw SingularError("one-photon distribution undefined: both amplitudes vanish");
    return {Ratio::of_amplitudes(right, left), pr / (pr + pl), pl / (pr + pl)};
}

}  // namespace

OnePhotonDistribution one_photon_distribution(const Cavity& spec, const DetectionEnvelopes& envelopes,
                                              const OnePhotonCoefficients& coeffs) {
    require_normalized(envelopes.right.norm_squared(), "detection envelope");
    require_normalized(envelopes.left.norm_squared(), "detection envelope");
    return distribution_from(one_photon_amplitude(spec, Port::right, envelopes.right, coeffs),
                             one_photon_amplitude(spec, Port::left, envelopes.left, coeffs));
}

OnePhotonDistribution one_photon_distribution_at(const Cavity& spec, double omega, ComplexScalar c_right,
                                                 ComplexScalar c_left) {
    const double n2 = std::norm(c_right) + std::norm(c_left);
    require_normalized(n2, "one-photon coefficients");
    const ModeMatrixd mg = propagated_matrix(spec, omega);
    return distribution_from(mg(0, 0) * c_right + mg(0, 1) * c_left, mg(1, 0) * c_right + mg(1, 1) * c_left);
}

}  // namespace fpio
