#include "fpio/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <thread>

#include "fpio/cavity.hpp"
#include "fpio/errors.hpp"
#include "fpio/gram.hpp"
#include "fpio/parallel.hpp"

namespace fpio {

unsigned resolve_threads(std::optional<long> flag) {
    if (flag) {
        if (*flag < 1 || *flag > 4096) throw ConfigError("--threads", "must be between 1 and 4096");
        return static_cast<unsigned>(*flag);
    }
    if (const char* env = std::getenv("FPIO_THREADS"); env && *env) {
        const auto v = parse_real(env);
        if (!v || *v != std::floor(*v) || *v < 1 || *v > 4096) {
            throw ConfigError("FPIO_THREADS", std::string("expected a positive integer, got '") + env + "'");
        }
        return static_cast<unsigned>(*v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// One point of the sweep: values for whichever variables are swept.
struct Assignment {
    std::optional<double> R, x, y, z, omega;

    void set(SweepVariable v, double value) {
        switch (v) {
            case SweepVariable::R: R = value; break;
            case SweepVariable::x: x = value; break;
            case SweepVariable::y: y = value; break;
            case SweepVariable::z: z = value; break;
            case SweepVariable::omega: omega = value; break;
        }
    }
};

// Cartesian product of the axes; the last declared axis varies fastest.
class SweepPlan {
public:
    explicit SweepPlan(const std::vector<AxisConfig>& axes) : axes_(axes) {
        rows_ = 1;
        for (const auto& a : axes_) {
            values_.push_back(a.values());
            rows_ *= values_.back().size();
        }
    }

    std::size_t rows() const { return rows_; }

    Assignment at(std::size_t index, std::vector<Cell>& axis_cells) const {
        Assignment a;
        std::vector<double> picked(axes_.size());
        for (std::size_t k = axes_.size(); k-- > 0;) {
            const std::size_t n = values_[k].size();
            picked[k] = values_[k][index % n];
            index /= n;
        }
        for (std::size_t k = 0; k < axes_.size(); ++k) {
            a.set(axes_[k].variable, picked[k]);
            axis_cells.emplace_back(picked[k]);
        }
        return a;
    }

    std::vector<std::string> columns() const {
        std::vector<std::string> c;
        for (const auto& a : axes_) c.emplace_back(to_string(a.variable));
        return c;
    }

private:
    std::vector<AxisConfig> axes_;
    std::vector<std::vector<double>> values_;
    std::size_t rows_ = 1;
};

Table run_sweep(const ScenarioConfig& config, const RunOptions& options, std::vector<std::string> outputs,
                const std::function<std::vector<Cell>(const Assignment&)>& row_fn) {
    const SweepPlan plan(config.sweep);
    Table t;
    t.columns = plan.columns();
    t.columns.insert(t.columns.end(), outputs.begin(), outputs.end());
    t.rows.resize(plan.rows());
    parallel_for(plan.rows(), options.threads, [&](std::size_t i) {
        std::vector<Cell> row;
        row.reserve(t.columns.size());
        const Assignment a = plan.at(i, row);
        auto out = row_fn(a);
        row.insert(row.end(), std::make_move_iterator(out.begin()), std::make_move_iterator(out.end()));
        t.rows[i] = std::move(row);
    });
    return t;
}

// --- scenario resolution -------------------------------------------------------

double symmetric_R(const ScenarioConfig& c, const Assignment& a) {
    if (a.R) return *a.R;
    if (!c.cavity.R) throw ConfigError("cavity", "this scenario needs a symmetric cavity given by the R shorthand");
    return *c.cavity.R;
}

Cavity cavity_for(const ScenarioConfig& c, const Assignment& a) {
    if (!a.R) return build_cavity(c.cavity);
    CavityConfig cc = c.cavity;
    cc.R = *a.R;
    return build_cavity(cc);
}

double phase_x(const ScenarioConfig& c, const Assignment& a) {
    const double l = c.cavity.length_over_c;
    if (a.x) return *a.x;
    if (a.omega) return *a.omega * l;
    if (c.point.x) return *c.point.x;
    if (c.point.omega) return *c.point.omega * l;
    if (c.point.N) return std::numbers::pi * static_cast<double>(*c.point.N);
    return 0.0;
}

bool is_two_photon_single(const StateConfig& s) {
    return std::holds_alternative<BasisStateConfig>(s) || std::holds_alternative<CoefficientStateConfig>(s) ||
           std::holds_alternative<ZetaStateConfig>(s);
}

SingleModeState single_state(const ScenarioConfig& c, const Assignment& a) {
    if (const auto* b = std::get_if<BasisStateConfig>(&c.state)) return basis_state(b->name);
    if (const auto* k = std::get_if<CoefficientStateConfig>(&c.state)) {
        return k->normalize ? SingleModeState::normalized(k->c_rr, k->c_rl, k->c_ll)
                            : SingleModeState(k->c_rr, k->c_rl, k->c_ll);
    }
    const auto& z = std::get<ZetaStateConfig>(c.state);
    return zeta_state(a.z.value_or(z.z), a.y.value_or(z.y));
}

void require_state(const ScenarioConfig& c) {
    if (std::holds_alternative<std::monostate>(c.state)) throw ConfigError("state", "required field is missing");
}

struct Distribution {
    Cell p_rr, p_rl, p_ll;
};

Distribution cells_of(const OutcomeDistribution& d) { return {d.p_rr, d.p_rl, d.p_ll}; }

Distribution undefined_distribution() {
    return {std::string("undefined"), std::string("undefined"), std::string("undefined")};
}

void flag_ratio(const Ratio& r, const char* name, std::vector<std::string>& flags) {
    if (r.is_infinite()) flags.push_back(std::string(name) + "_infinite");
    if (r.is_indeterminate()) flags.push_back(std::string(name) + "_undefined");
}

// Ratios and distribution from the three outside amplitudes.
struct TwoPhotonOutcome {
    Ratio r1 = Ratio::indeterminate();
    Ratio r2 = Ratio::indeterminate();
    Distribution dist;
    std::vector<std::string> flags;
};

TwoPhotonOutcome outcome_of(ComplexScalar a_rr, ComplexScalar a_rl, ComplexScalar a_ll) {
    TwoPhotonOutcome o;
    o.r1 = Ratio::of_amplitudes(a_rl, a_rr);
    o.r2 = Ratio::of_amplitudes(a_rl, a_ll);
    flag_ratio(o.r1, "ratio_1", o.flags);
    flag_ratio(o.r2, "ratio_2", o.flags);
    try {
        o.dist = cells_of(outcome_distribution(o.r1, o.r2));
    } catch (const SingularError&) {
        try {
            o.dist = cells_of(outcome_from_amplitudes(a_rr, a_rl, a_ll));
            o.flags.emplace_back("distribution_from_amplitudes");
        } catch (const SingularError&) {
            o.dist = undefined_distribution();
            o.flags.emplace_back("distribution_undefined");
        }
    }
    return o;
}

TwoPhotonOutcome single_mode_outcome(const ScenarioConfig& c, const Assignment& a) {
    const double R = symmetric_R(c, a);
    const double x = phase_x(c, a);
    const SingleModeState s = single_state(c, a);
    return outcome_of(single_mode_amplitude(s, R, x, Port::right, Port::right),
                      single_mode_amplitude(s, R, x, Port::right, Port::left),
                      single_mode_amplitude(s, R, x, Port::left, Port::left));
}

// --- continuous mode -------------------------------------------------------------

GridPtr make_grid(const ScenarioConfig& c, const RunOptions& o) {
    if (!c.grid) throw ConfigError("grid", "required field is missing");
    const std::size_t count = o.grid_count.value_or(c.grid->count);
    if (count < 2) throw ConfigError("--grid", "must be >= 2");
    return std::make_shared<const FrequencyGrid>(FrequencyGrid::uniform(c.grid->start, c.grid->stop, count));
}

SpectralEnvelope make_envelope(const GridPtr& grid, const EnvelopeConfig& e, double center) {
    if (e.type == "lorentzian") return SpectralEnvelope::lorentzian(grid, center, e.width);
    return SpectralEnvelope::gaussian(grid, center, e.width);
}

DetectionEnvelopes make_envelopes(const ScenarioConfig& c, const GridPtr& grid, const Assignment& a) {
    if (!c.envelopes) throw ConfigError("envelopes", "required field is missing");
    const auto& e = *c.envelopes;
    return {make_envelope(grid, e[0], a.omega.value_or(e[0].center)),
            make_envelope(grid, e[1], a.omega.value_or(e[1].center))};
}

TwoPhotonKernel make_kernel(const KernelConfig& k, const GridPtr& grid) {
    ModeMatrixd coeffs;
    coeffs << k.k11, k.k12, k.k12, k.k22;
    TwoPhotonKernel kernel = [&] {
        if (k.point) return TwoPhotonKernel::point(grid, *k.point, coeffs);
        const auto& p = *k.profiles;
        return TwoPhotonKernel::separable(
            grid, {make_envelope(grid, p[0], p[0].center).values(), make_envelope(grid, p[1], p[1].center).values()},
            coeffs);
    }();
    return k.normalize ? normalize_kernel(kernel) : kernel;
}

OnePhotonCoefficients make_one_photon(const OnePhotonStateConfig& s, const GridPtr& grid) {
    OnePhotonCoefficients c{grid, make_envelope(grid, s.right.profile, s.right.profile.center).values(),
                            make_envelope(grid, s.left.profile, s.left.profile.center).values()};
    for (auto& v : c.right) v *= s.right.amplitude;
    for (auto& v : c.left) v *= s.left.amplitude;
    if (s.normalize) {
        const double n2 = c.norm_squared();
        if (!(n2 > 0.0)) throw ValidationError("cannot normalize all-zero one-photon coefficients");
        const double f = 1.0 / std::sqrt(n2);
        for (auto& v : c.right) v *= f;
        for (auto& v : c.left) v *= f;
    }
    return c;
}

std::vector<Cell> two_photon_cells(const TwoPhotonOutcome& o) {
    return {ratio_cell(o.r1), ratio_cell(o.r2), o.dist.p_rr, o.dist.p_rl, o.dist.p_ll, join_flags(o.flags)};
}

const std::vector<std::string> kTwoPhotonColumns{"ratio_1", "ratio_2", "p_rr", "p_rl", "p_ll", "flags"};
const std::vector<std::string> kOnePhotonColumns{"ratio", "p_r", "p_l", "flags"};

std::vector<Cell> one_photon_cells(const OnePhotonDistribution& d) {
    std::vector<std::string> flags;
    flag_ratio(d.ratio, "ratio", flags);
    return {ratio_cell(d.ratio), d.p_r, d.p_l, join_flags(flags)};
}

OnePhotonDistribution single_one_photon(const ScenarioConfig& c, const OnePhotonStateConfig& s, const Assignment& a) {
    ComplexScalar cr = s.c_r;
    ComplexScalar cl = s.c_l;
    if (s.normalize) {
        const double n = std::sqrt(std::norm(cr) + std::norm(cl));
        if (!(n > 0.0)) throw ValidationError("cannot normalize all-zero one-photon coefficients");
        cr /= n;
        cl /= n;
    }
    const Cavity spec = cavity_for(c, a);
    return one_photon_distribution_at(spec, phase_x(c, a) / c.cavity.length_over_c, cr, cl);
}

Table single_row(std::vector<std::string> columns, std::vector<Cell> cells) {
    Table t;
    t.columns = std::move(columns);
    t.rows.push_back(std::move(cells));
    t.single = true;
    return t;
}

void append_complex(std::vector<std::string>& cols, std::vector<Cell>& cells, const std::string& name,
                    const ModeMatrixd& m) {
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const std::string base = name + std::to_string(i + 1) + std::to_string(j + 1);
            cols.push_back(base + "_re");
            cols.push_back(base + "_im");
            cells.emplace_back(m(i, j).real());
            cells.emplace_back(m(i, j).imag());
        }
    }
}

}  // namespace

// --- commands ----------------------------------------------------------------------

Table cmd_matrices(const ScenarioConfig& config, const RunOptions& options) {
    const Cavity spec = build_cavity(config.cavity);
    const GridPtr grid = make_grid(config, options);
    Table t;
    t.rows.resize(grid->size());
    std::vector<std::vector<std::string>> column_sets(grid->size());
    parallel_for(grid->size(), options.threads, [&](std::size_t k) {
        const double omega = (*grid)[k];
        std::vector<std::string> cols{"omega", "x"};
        std::vector<Cell> cells{omega, phase_point(spec, omega).x};
        const ModeMatrixd b = inside_matrix(spec, omega);
        const ModeMatrixd c = outside_matrix(spec, omega);
        const ModeMatrixd m = inside_to_outside_matrix(spec, omega);
        const ModeMatrixd g = commutator_metric(spec, omega);
        append_complex(cols, cells, "b", b);
        append_complex(cols, cells, "c", c);
        append_complex(cols, cells, "m", m);
        append_complex(cols, cells, "g", g);
        cols.insert(cols.end(), {"unitarity_residual", "metric_residual", "flags"});
        cells.emplace_back(identity_residual(mat_mul(c, adjoint(c))));
        cells.emplace_back(identity_residual(mat_mul(mat_mul(m, g), adjoint(m))));
        cells.emplace_back(is_resonant(round_trip_denominator(spec, omega)) ? "resonant" : "");
        t.rows[k] = std::move(cells);
        column_sets[k] = std::move(cols);
    });
    t.columns = column_sets.front();
    return t;
}

Table cmd_sweep(const ScenarioConfig& config, const RunOptions& options) {
    require_state(config);
    if (config.mode == ScenarioMode::single) {
        if (const auto* op = std::get_if<OnePhotonStateConfig>(&config.state)) {
            return run_sweep(config, options, kOnePhotonColumns,
                             [&](const Assignment& a) { return one_photon_cells(single_one_photon(config, *op, a)); });
        }
        const std::vector<std::string> cols{"ratio", "r_zero", "r_infinity", "p_rr", "p_rl", "p_ll", "flags"};
        const auto* zeta = std::get_if<ZetaStateConfig>(&config.state);
        return run_sweep(config, options, cols, [&](const Assignment& a) -> std::vector<Cell> {
            const double R = symmetric_R(config, a);
            const double x = phase_x(config, a);
            const Ratio r0 = limit_small_z(R, x);
            const Ratio rinf = limit_large_z(R, x);
            std::vector<std::string> flags;
            Ratio ratio = Ratio::indeterminate();
            Distribution dist;
            if (zeta) {
                const double z = a.z.value_or(zeta->z);
                const double y = a.y.value_or(zeta->y);
                ratio = config.point.N ? resonance_ratio(R, z, y, parity_of(*config.point.N))
                                       : ratio_zeta_form({x, y, z, R});
                flag_ratio(ratio, "ratio", flags);
                if (ratio.is_indeterminate()) {
                    dist = undefined_distribution();
                    flags.emplace_back("distribution_undefined");
                } else {
                    dist = cells_of(distribution_symmetric(ratio));
                }
            } else {
                const auto o = single_mode_outcome(config, a);
                ratio = o.r1;
                dist = o.dist;
                flags = o.flags;
            }
            flag_ratio(r0, "r_zero", flags);
            return {ratio_cell(ratio), ratio_cell(r0), ratio_cell(rinf), dist.p_rr, dist.p_rl, dist.p_ll,
                    join_flags(flags)};
        });
    }

    const GridPtr grid = make_grid(config, options);
    if (const auto* op = std::get_if<OnePhotonStateConfig>(&config.state)) {
        const OnePhotonCoefficients coeffs = make_one_photon(*op, grid);
        return run_sweep(config, options, kOnePhotonColumns, [&](const Assignment& a) {
            return one_photon_cells(
                one_photon_distribution(cavity_for(config, a), make_envelopes(config, grid, a), coeffs));
        });
    }
    const TwoPhotonKernel kernel = make_kernel(std::get<KernelConfig>(config.state), grid);
    return run_sweep(config, options, kTwoPhotonColumns, [&](const Assignment& a) {
        const auto r = coincidence_ratios(cavity_for(config, a), make_envelopes(config, grid, a), kernel, 1);
        return two_photon_cells(outcome_of(r.a_rr, r.a_rl, r.a_ll));
    });
}

Table cmd_two_photon(const ScenarioConfig& config, const RunOptions& options) {
    require_state(config);
    const Assignment none;
    if (config.mode == ScenarioMode::single) {
        if (!is_two_photon_single(config.state)) throw ConfigError("state", "two-photon needs basis, coefficients or zeta");
        return single_row(kTwoPhotonColumns, two_photon_cells(single_mode_outcome(config, none)));
    }
    const auto* k = std::get_if<KernelConfig>(&config.state);
    if (!k) throw ConfigError("state", "two-photon needs a kernel in continuous mode");
    const GridPtr grid = make_grid(config, options);
    const auto r = coincidence_ratios(build_cavity(config.cavity), make_envelopes(config, grid, none),
                                      make_kernel(*k, grid), options.threads);
    return single_row(kTwoPhotonColumns, two_photon_cells(outcome_of(r.a_rr, r.a_rl, r.a_ll)));
}

Table cmd_one_photon(const ScenarioConfig& config, const RunOptions& options) {
    require_state(config);
    const auto* op = std::get_if<OnePhotonStateConfig>(&config.state);
    if (!op) throw ConfigError("state", "one-photon needs a one_photon state");
    const Assignment none;
    if (config.mode == ScenarioMode::single) {
        return single_row(kOnePhotonColumns, one_photon_cells(single_one_photon(config, *op, none)));
    }
    const GridPtr grid = make_grid(config, options);
    return single_row(kOnePhotonColumns,
                      one_photon_cells(one_photon_distribution(build_cavity(config.cavity),
                                                               make_envelopes(config, grid, none),
                                                               make_one_photon(*op, grid))));
}

Table cmd_gram(const ScenarioConfig& config, const RunOptions& options) {
    for (std::size_t i = 0; i < config.sweep.size(); ++i) {
        const auto v = config.sweep[i].variable;
        if (v == SweepVariable::y || v == SweepVariable::z) {
            throw ConfigError("sweep[" + std::to_string(i) + "].variable", "gram depends only on R and x");
        }
    }
    std::vector<std::string> cols{"R", "x", "delta", "rho"};
    for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 3; ++j) cols.push_back("g" + std::to_string(i) + std::to_string(j));
    }
    cols.insert(cols.end(), {"det", "det_closed"});
    for (const char* n : {"n_plus", "n_zero", "n_minus"}) {
        for (const char* part : {"_20", "_11", "_02", "_eigenvalue", "_metric_norm", "_metric_norm_closed"}) {
            cols.push_back(std::string(n) + part);
        }
    }
    cols.push_back("flags");

    auto row = [&](const Assignment& a) -> std::vector<Cell> {
        const double R = symmetric_R(config, a);
        const double x = phase_x(config, a);
        const auto p = gram_parameters(R, x);
        const Eigen::Matrix3d g = gram_matrix(p).real();
        std::vector<Cell> cells{R, x, p.delta, p.rho};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) cells.emplace_back(g(i, j));
        }
        cells.emplace_back(determinant(g));
        cells.emplace_back(gram_determinant(p));
        std::string flags;
        try {
            for (const auto& b : orthonormal_basis(p)) {
                for (int i = 0; i < 3; ++i) cells.emplace_back(b.coefficients(i));
                cells.emplace_back(b.eigenvalue);
                cells.emplace_back(b.coefficients.dot(g * b.coefficients));
                cells.emplace_back(b.metric_norm);
            }
        } catch (const SingularError&) {
            cells.resize(cols.size() - 1, std::string("undefined"));
            flags = "degenerate";
        }
        cells.emplace_back(flags);
        return cells;
    };
    if (config.sweep.empty()) return single_row(cols, row(Assignment{}));
    // A swept R or x is already an axis column; leave it out of the outputs.
    std::vector<bool> keep(cols.size(), true);
    for (const auto& axis : config.sweep) {
        if (axis.variable == SweepVariable::R) keep[0] = false;
        if (axis.variable == SweepVariable::x) keep[1] = false;
    }
    std::vector<std::string> outputs;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (keep[i]) outputs.push_back(cols[i]);
    }
    return run_sweep(config, options, outputs, [&](const Assignment& a) {
        auto full = row(a);
        std::vector<Cell> kept;
        for (std::size_t i = 0; i < full.size(); ++i) {
            if (keep[i]) kept.push_back(std::move(full[i]));
        }
        return kept;
    });
}

}  // namespace fpio
