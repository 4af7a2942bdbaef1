#pragma once

// Scenario configs for the command-line scanner. YAML is the authoring
// format; JSON is a YAML subset and parses through the same path.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fpio/linalg.hpp"
#include "fpio/photon_states.hpp"
#include "fpio/single_mode.hpp"

namespace fpio {

enum class ScenarioMode { single, continuous };

enum class SweepVariable { R, x, y, z, omega };

std::string_view to_string(SweepVariable v);

/// A mirror given by power reflectance or by an explicit (r, t) pair.
struct MirrorConfig {
    std::optional<double> R;
    ComplexScalar r{0.0};
    ComplexScalar t{0.0};
};

struct CavityConfig {
    /// Shorthand for two identical mirrors; mirror1/mirror2 are then unused.
    std::optional<double> R;
    MirrorConfig mirror1;
    MirrorConfig mirror2;
    double length_over_c = 1.0;
};

struct EnvelopeConfig {
    std::string type = "gaussian";  ///< gaussian | lorentzian
    double center = 0.0;
    double width = 1.0;
};

struct GridConfig {
    double start = 0.0;
    double stop = 1.0;
    std::size_t count = 2;
};

struct BasisStateConfig {
    std::string name;
};

struct CoefficientStateConfig {
    ComplexScalar c_rr{0.0};
    ComplexScalar c_rl{0.0};
    ComplexScalar c_ll{0.0};
    bool normalize = false;
};

struct ZetaStateConfig {
    double z = 0.0;  ///< may be +inf
    double y = 0.0;
};

struct KernelConfig {
    /// Separable profiles for modes 1 and 2, or a point kernel at grid index.
    std::optional<std::array<EnvelopeConfig, 2>> profiles;
    std::optional<std::size_t> point;
    ComplexScalar k11{0.0};
    ComplexScalar k12{0.0};
    ComplexScalar k22{0.0};
    bool normalize = true;
};

struct OnePhotonComponentConfig {
    EnvelopeConfig profile;
    ComplexScalar amplitude{0.0};
};

struct OnePhotonStateConfig {
    /// Single mode: c_r, c_l. Continuous: profile times amplitude per side.
    ComplexScalar c_r{0.0};
    ComplexScalar c_l{0.0};
    OnePhotonComponentConfig right;
    OnePhotonComponentConfig left;
    bool normalize = false;
};

using StateConfig = std::variant<std::monostate, BasisStateConfig, CoefficientStateConfig, ZetaStateConfig,
                                 KernelConfig, OnePhotonStateConfig>;

/// Fixed evaluation point of a single-mode scenario: x, omega (x = omega l/c)
/// or an integer N with x = pi N.
struct PointConfig {
    std::optional<double> x;
    std::optional<double> omega;
    std::optional<long> N;
};

struct AxisConfig {
    SweepVariable variable = SweepVariable::R;
    double start = 0.0;
    double stop = 0.0;
    std::size_t count = 1;
    bool endpoint = true;

    std::vector<double> values() const;
};

struct ScenarioConfig {
    ScenarioMode mode = ScenarioMode::single;
    CavityConfig cavity;
    StateConfig state;
    PointConfig point;
    std::optional<GridConfig> grid;
    std::optional<std::array<EnvelopeConfig, 2>> envelopes;  ///< right, left
    std::vector<AxisConfig> sweep;
};

/// Parses YAML or JSON text. Throws ConfigError carrying the offending field path.
ScenarioConfig parse_scenario(std::string_view text);

/// Reads a file, or stdin for "-".
ScenarioConfig load_scenario(const std::string& path);

/// Canonical YAML; parse_scenario(serialize_scenario(c)) reproduces c.
std::string serialize_scenario(const ScenarioConfig& config);

/// Parses numbers and the angle forms "pi", "k*pi", "pi/m", "k*pi/m".
std::optional<double> parse_real(std::string_view text);

/// Builds the cavity; throws ConfigError on invalid mirrors.
Cavity build_cavity(const CavityConfig& config);

}  // namespace fpio
