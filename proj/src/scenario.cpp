#include "fpio/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "fpio/errors.hpp"
#include "fpio/format.hpp"

namespace fpio {

std::string_view to_string(SweepVariable v) {
    switch (v) {
        case SweepVariable::R: return "R";
        case SweepVariable::x: return "x";
        case SweepVariable::y: return "y";
        case SweepVariable::z: return "z";
        case SweepVariable::omega: return "omega";
    }
    return "?";
}

std::vector<double> AxisConfig::values() const {
    std::vector<double> v(count);
    if (count == 1) {
        v[0] = start;
        return v;
    }
    const double divisions = static_cast<double>(endpoint ? count - 1 : count);
    const double step = (stop - start) / divisions;
    for (std::size_t i = 0; i < count; ++i) v[i] = start + step * static_cast<double>(i);
    if (endpoint) v.back() = stop;
    return v;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::optional<double> parse_number(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    for (std::string_view yaml_inf : {".inf", ".Inf", ".INF"}) {
        if (s == yaml_inf) return std::numeric_limits<double>::infinity();
        if (s.size() == 5 && s.front() == '-' && s.substr(1) == yaml_inf) return -std::numeric_limits<double>::infinity();
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || std::isnan(v)) return std::nullopt;
    return v;
}

}  // namespace

std::optional<double> parse_real(std::string_view text) {
    text = trim(text);
    const auto at = text.find("pi");
    if (at == std::string_view::npos) return parse_number(text);

    std::string_view head = trim(text.substr(0, at));
    std::string_view tail = trim(text.substr(at + 2));
    double k = 1.0;
    if (!head.empty() && head.back() == '*') head = trim(head.substr(0, head.size() - 1));
    if (head == "-") {
        k = -1.0;
    } else if (!head.empty() && head != "+") {
        const auto v = parse_number(head);
        if (!v) return std::nullopt;
        k = *v;
    }
    double m = 1.0;
    if (!tail.empty()) {
        if (tail.front() != '/') return std::nullopt;
        const auto v = parse_number(tail.substr(1));
        if (!v || *v == 0.0) return std::nullopt;
        m = *v;
    }
    return k * std::numbers::pi / m;
}

namespace {

// --- reading -----------------------------------------------------------------

std::string join(const std::string& path, std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string index_path(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void require_map(const YAML::Node& node, const std::string& path) {
    if (!node.IsMap()) throw ConfigError(path.empty() ? "<document>" : path, "expected a mapping");
}

void allow_keys(const YAML::Node& node, const std::string& path, std::initializer_list<std::string_view> keys) {
    require_map(node, path);
    for (const auto& kv : node) {
        const std::string key = kv.first.as<std::string>();
        bool known = false;
        for (auto k : keys) known = known || k == key;
        if (!known) throw ConfigError(join(path, key), "unknown field");
    }
}

double read_real(const YAML::Node& node, const std::string& path) {
    if (!node.IsScalar()) throw ConfigError(path, "expected a number");
    const auto v = parse_real(node.Scalar());
    if (!v) throw ConfigError(path, "cannot parse '" + node.Scalar() + "' as a number");
    return *v;
}

double read_finite(const YAML::Node& node, const std::string& path) {
    const double v = read_real(node, path);
    if (!std::isfinite(v)) throw ConfigError(path, "must be finite");
    return v;
}

std::optional<double> optional_real(const YAML::Node& parent, std::string_view key, const std::string& path) {
    const YAML::Node n = parent[std::string(key)];
    if (!n) return std::nullopt;
    return read_finite(n, join(path, key));
}

double required_real(const YAML::Node& parent, std::string_view key, const std::string& path) {
    const YAML::Node n = parent[std::string(key)];
    if (!n) throw ConfigError(join(path, key), "required field is missing");
    return read_finite(n, join(path, key));
}

std::size_t read_count(const YAML::Node& node, const std::string& path, std::size_t minimum) {
    const double v = read_finite(node, path);
    if (v != std::floor(v) || v < static_cast<double>(minimum) || v > 1e9) {
        throw ConfigError(path, "must be an integer >= " + std::to_string(minimum));
    }
    return static_cast<std::size_t>(v);
}

bool read_bool(const YAML::Node& node, const std::string& path) {
    if (node.IsScalar()) {
        const std::string& s = node.Scalar();
        if (s == "true") return true;
        if (s == "false") return false;
    }
    throw ConfigError(path, "expected true or false");
}

std::string read_string(const YAML::Node& node, const std::string& path) {
    if (!node.IsScalar()) throw ConfigError(path, "expected a string");
    return node.Scalar();
}

// A number, or [re, im].
ComplexScalar read_complex(const YAML::Node& node, const std::string& path) {
    if (node.IsSequence()) {
        if (node.size() != 2) throw ConfigError(path, "complex value must be [re, im]");
        return {read_finite(node[0], index_path(path, 0)), read_finite(node[1], index_path(path, 1))};
    }
    return {read_finite(node, path), 0.0};
}

ComplexScalar optional_complex(const YAML::Node& parent, std::string_view key, const std::string& path) {
    const YAML::Node n = parent[std::string(key)];
    if (!n) return 0.0;
    return read_complex(n, join(path, key));
}

MirrorConfig read_mirror(const YAML::Node& node, const std::string& path) {
    allow_keys(node, path, {"R", "r", "t"});
    MirrorConfig m;
    if (node["R"]) {
        if (node["r"] || node["t"]) throw ConfigError(path, "give either R or (r, t), not both");
        m.R = required_real(node, "R", path);
        return m;
    }
    if (!node["r"] || !node["t"]) throw ConfigError(path, "mirror needs R or both r and t");
    m.r = read_complex(node["r"], join(path, "r"));
    m.t = read_complex(node["t"], join(path, "t"));
    return m;
}

CavityConfig read_cavity(const YAML::Node& node, const std::string& path) {
    allow_keys(node, path, {"R", "mirror1", "mirror2", "length_over_c"});
    CavityConfig c;
    if (!node["length_over_c"]) throw ConfigError(join(path, "length_over_c"), "required field is missing");
    c.length_over_c = required_real(node, "length_over_c", path);
    if (!(c.length_over_c > 0.0)) throw ConfigError(join(path, "length_over_c"), "must be > 0");
    if (node["R"]) {
        if (node["mirror1"] || node["mirror2"]) throw ConfigError(path, "give either R or mirror1/mirror2, not both");
        c.R = required_real(node, "R", path);
    } else {
        if (!node["mirror1"]) throw ConfigError(join(path, "mirror1"), "required field is missing (or use R)");
        if (!node["mirror2"]) throw ConfigError(join(path, "mirror2"), "required field is missing (or use R)");
        c.mirror1 = read_mirror(node["mirror1"], join(path, "mirror1"));
        c.mirror2 = read_mirror(node["mirror2"], join(path, "mirror2"));
    }
    return c;
}

EnvelopeConfig read_envelope(const YAML::Node& node, const std::string& path) {
    allow_keys(node, path, {"type", "center", "width"});
    EnvelopeConfig e;
    if (node["type"]) e.type = read_string(node["type"], join(path, "type"));
    if (e.type != "gaussian" && e.type != "lorentzian") {
        throw ConfigError(join(path, "type"), "expected gaussian or lorentzian");
    }
    e.center = required_real(node, "center", path);
    e.width = required_real(node, "width", path);
    if (!(e.width > 0.0)) throw ConfigError(join(path, "width"), "must be > 0");
    return e;
}

GridConfig read_grid(const YAML::Node& node, const std::string& path) {
    allow_keys(node, path, {"start", "stop", "count"});
    GridConfig g;
    g.start = required_real(node, "start", path);
    g.stop = required_real(node, "stop", path);
    if (!(g.stop > g.start)) throw ConfigError(join(path, "stop"), "must be greater than start");
    if (!node["count"]) throw ConfigError(join(path, "count"), "required field is missing");
    g.count = read_count(node["count"], join(path, "count"), 2);
    return g;
}

KernelConfig read_kernel(const YAML::Node& node, const std::string& path) {
    allow_keys(node, path, {"profiles", "point", "coefficients", "normalize"});
    KernelConfig k;
    if (node["profiles"] && node["point"]) throw ConfigError(path, "give either profiles or point, not both");
    if (const YAML::Node p = node["profiles"]) {
        const std::string pp = join(path, "profiles");
        if (!p.IsSequence() || p.size() != 2) throw ConfigError(pp, "expected two profiles (mode 1, mode 2)");
        k.profiles = std::array<EnvelopeConfig, 2>{read_envelope(p[0], index_path(pp, 0)),
                                                   read_envelope(p[1], index_path(pp, 1))};
    } else if (const YAML::Node p = node["point"]) {
        k.point = read_count(p, join(path, "point"), 0);
    } else {
        throw ConfigError(join(path, "profiles"), "kernel needs profiles or point");
    }
    const std::string cp = join(path, "coefficients");
    const YAML::Node c = node["coefficients"];
    if (!c) throw ConfigError(cp, "required field is missing");
    allow_keys(c, cp, {"k11", "k12", "k22"});
    k.k11 = optional_complex(c, "k11", cp);
    k.k12 = optional_complex(c, "k12", cp);
    k.k22 = optional_complex(c, "k22", cp);
    if (node["normalize"]) k.normalize = read_bool(node["normalize"], join(path, "normalize"));
    return k;
}

OnePhotonComponentConfig read_one_photon_component(const YAML::Node& node, const std::string& path) {
    allow_keys(node, path, {"type", "center", "width", "amplitude"});
    OnePhotonComponentConfig c;
    YAML::Node profile;
    for (const char* key : {"type", "center", "width"}) {
        if (node[key]) profile[key] = node[key];
    }
    c.profile = read_envelope(profile, path);
    c.amplitude = optional_complex(node, "amplitude", path);
    return c;
}

OnePhotonStateConfig read_one_photon(const YAML::Node& node, const std::string& path, ScenarioMode mode) {
    OnePhotonStateConfig s;
    if (mode == ScenarioMode::single) {
        allow_keys(node, path, {"c_r", "c_l", "normalize"});
        s.c_r = optional_complex(node, "c_r", path);
        s.c_l = optional_complex(node, "c_l", path);
    } else {
        allow_keys(node, path, {"right", "left", "normalize"});
        for (const char* side : {"right", "left"}) {
            if (!node[side]) throw ConfigError(join(path, side), "required field is missing");
        }
        s.right = read_one_photon_component(node["right"], join(path, "right"));
        s.left = read_one_photon_component(node["left"], join(path, "left"));
    }
    if (node["normalize"]) s.normalize = read_bool(node["normalize"], join(path, "normalize"));
    return s;
}

StateConfig read_state(const YAML::Node& node, const std::string& path, ScenarioMode mode) {
    allow_keys(node, path, {"basis", "coefficients", "zeta", "kernel", "one_photon"});
    if (node.size() != 1) throw ConfigError(path, "exactly one of basis, coefficients, zeta, kernel, one_photon");
    const bool single = mode == ScenarioMode::single;
    auto require_mode = [&](std::string_view key, bool ok) {
        if (!ok) {
            throw ConfigError(join(path, key), single ? "not available in single mode" : "not available in continuous mode");
        }
    };
    if (const YAML::Node n = node["basis"]) {
        require_mode("basis", single);
        BasisStateConfig b{read_string(n, join(path, "basis"))};
        try {
            (void)basis_state(b.name);
        } catch (const DomainError& e) {
            throw ConfigError(join(path, "basis"), e.what());
        }
        return b;
    }
    if (const YAML::Node n = node["coefficients"]) {
        require_mode("coefficients", single);
        const std::string cp = join(path, "coefficients");
        allow_keys(n, cp, {"c_rr", "c_rl", "c_ll", "normalize"});
        CoefficientStateConfig c;
        c.c_rr = optional_complex(n, "c_rr", cp);
        c.c_rl = optional_complex(n, "c_rl", cp);
        c.c_ll = optional_complex(n, "c_ll", cp);
        if (n["normalize"]) c.normalize = read_bool(n["normalize"], join(cp, "normalize"));
        try {
            if (c.normalize) {
                (void)SingleModeState::normalized(c.c_rr, c.c_rl, c.c_ll);
            } else {
                (void)SingleModeState(c.c_rr, c.c_rl, c.c_ll);
            }
        } catch (const Error& e) {
            throw ConfigError(cp, e.what());
        }
        return c;
    }
    if (const YAML::Node n = node["zeta"]) {
        require_mode("zeta", single);
        const std::string zp = join(path, "zeta");
        allow_keys(n, zp, {"z", "y"});
        ZetaStateConfig z;
        if (n["z"]) z.z = read_real(n["z"], join(zp, "z"));
        if (!(z.z >= 0.0)) throw ConfigError(join(zp, "z"), "must be >= 0 (inf allowed)");
        if (n["y"]) z.y = read_finite(n["y"], join(zp, "y"));
        return z;
    }
    if (const YAML::Node n = node["kernel"]) {
        require_mode("kernel", !single);
        return read_kernel(n, join(path, "kernel"));
    }
    const YAML::Node n = node["one_photon"];
    auto s = read_one_photon(n, join(path, "one_photon"), mode);
    if (single && !s.normalize) {
        const double n2 = std::norm(s.c_r) + std::norm(s.c_l);
        if (std::abs(n2 - 1.0) > kNormalizationTolerance) {
            throw ConfigError(join(path, "one_photon"), "|c_r|^2 + |c_l|^2 must be 1 (or set normalize: true)");
        }
    }
    return s;
}

PointConfig read_point(const YAML::Node& node, const std::string& path) {
    allow_keys(node, path, {"x", "omega", "N"});
    PointConfig p;
    p.x = optional_real(node, "x", path);
    p.omega = optional_real(node, "omega", path);
    if (const YAML::Node n = node["N"]) {
        const double v = read_finite(n, join(path, "N"));
        if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(join(path, "N"), "must be an integer");
        p.N = static_cast<long>(v);
    }
    const int given = int(p.x.has_value()) + int(p.omega.has_value()) + int(p.N.has_value());
    if (given > 1) throw ConfigError(path, "give only one of x, omega, N");
    return p;
}

SweepVariable read_variable(const YAML::Node& node, const std::string& path) {
    const std::string s = read_string(node, path);
    for (auto v : {SweepVariable::R, SweepVariable::x, SweepVariable::y, SweepVariable::z, SweepVariable::omega}) {
        if (to_string(v) == s) return v;
    }
    throw ConfigError(path, "unknown sweep variable '" + s + "' (expected R, x, y, z or omega)");
}

AxisConfig read_axis(const YAML::Node& node, const std::string& path) {
    allow_keys(node, path, {"variable", "start", "stop", "count", "endpoint"});
    AxisConfig a;
    if (!node["variable"]) throw ConfigError(join(path, "variable"), "required field is missing");
    a.variable = read_variable(node["variable"], join(path, "variable"));
    a.start = required_real(node, "start", path);
    if (!node["count"]) throw ConfigError(join(path, "count"), "required field is missing");
    a.count = read_count(node["count"], join(path, "count"), 1);
    a.stop = node["stop"] ? required_real(node, "stop", path) : a.start;
    if (a.count > 1 && !node["stop"]) throw ConfigError(join(path, "stop"), "required when count > 1");
    if (node["endpoint"]) a.endpoint = read_bool(node["endpoint"], join(path, "endpoint"));
    return a;
}

// Cross-field consistency: every sweep axis must name a variable the
// scenario actually has.
void check_consistency(const ScenarioConfig& c) {
    const bool single = c.mode == ScenarioMode::single;
    if (!single) {
        if (!c.grid) throw ConfigError("grid", "required in continuous mode");
        if (std::holds_alternative<KernelConfig>(c.state) && !c.envelopes) {
            throw ConfigError("envelopes", "required for a two-photon kernel");
        }
        if (std::holds_alternative<OnePhotonStateConfig>(c.state) && !c.envelopes) {
            throw ConfigError("envelopes", "required for a one-photon state");
        }
        if (const auto* k = std::get_if<KernelConfig>(&c.state); k && k->point && *k->point >= c.grid->count) {
            throw ConfigError("state.kernel.point", "index outside the frequency grid");
        }
        if (c.point.x || c.point.omega || c.point.N) throw ConfigError("point", "not used in continuous mode");
    }
    std::set<SweepVariable> seen;
    for (std::size_t i = 0; i < c.sweep.size(); ++i) {
        const std::string path = index_path("sweep", i) + ".variable";
        const SweepVariable v = c.sweep[i].variable;
        if (!seen.insert(v).second) throw ConfigError(path, "variable swept twice");
        switch (v) {
            case SweepVariable::R:
                if (!c.cavity.R) throw ConfigError(path, "R is undefined unless the cavity uses the R shorthand");
                break;
            case SweepVariable::x:
                if (!single) throw ConfigError(path, "x is undefined in continuous mode (sweep omega)");
                if (c.point.N) throw ConfigError(path, "x conflicts with point.N");
                break;
            case SweepVariable::omega:
                if (single && c.point.N) throw ConfigError(path, "omega conflicts with point.N");
                break;
            case SweepVariable::y:
            case SweepVariable::z:
                if (!std::holds_alternative<ZetaStateConfig>(c.state)) {
                    throw ConfigError(path, std::string(to_string(v)) + " is undefined unless the state is given by zeta");
                }
                break;
        }
    }
    if (seen.count(SweepVariable::x) && seen.count(SweepVariable::omega)) {
        throw ConfigError("sweep", "sweep x or omega, not both");
    }
    if (c.cavity.R) {
        try {
            (void)PowerReflectance<double>(*c.cavity.R);
        } catch (const DomainError& e) {
            throw ConfigError("cavity.R", e.what());
        }
    }
    for (std::size_t i = 0; i < c.sweep.size(); ++i) {
        const auto& a = c.sweep[i];
        const std::string path = index_path("sweep", i);
        if (a.variable == SweepVariable::R) {
            for (double R : a.values()) {
                if (!(R >= 0.0 && R < 1.0)) throw ConfigError(path, "R values must lie in [0, 1)");
            }
        }
        if (a.variable == SweepVariable::z && a.values().front() < 0.0) throw ConfigError(path, "z must be >= 0");
        if (a.variable == SweepVariable::z && a.values().back() < 0.0) throw ConfigError(path, "z must be >= 0");
    }
}

// --- writing -----------------------------------------------------------------

void emit_real(YAML::Emitter& out, double v) { out << format_number(v); }

void emit_complex(YAML::Emitter& out, ComplexScalar c) {
    out << YAML::Flow << YAML::BeginSeq;
    emit_real(out, c.real());
    emit_real(out, c.imag());
    out << YAML::EndSeq;
}

void emit_envelope(YAML::Emitter& out, const EnvelopeConfig& e) {
    out << YAML::Key << "type" << YAML::Value << e.type;
    out << YAML::Key << "center" << YAML::Value;
    emit_real(out, e.center);
    out << YAML::Key << "width" << YAML::Value;
    emit_real(out, e.width);
}

void emit_mirror(YAML::Emitter& out, const MirrorConfig& m) {
    out << YAML::BeginMap;
    if (m.R) {
        out << YAML::Key << "R" << YAML::Value;
        emit_real(out, *m.R);
    } else {
        out << YAML::Key << "r" << YAML::Value;
        emit_complex(out, m.r);
        out << YAML::Key << "t" << YAML::Value;
        emit_complex(out, m.t);
    }
    out << YAML::EndMap;
}

struct StateEmitter {
    YAML::Emitter& out;
    ScenarioMode mode;

    void operator()(std::monostate) const {}
    void operator()(const BasisStateConfig& b) const { out << YAML::Key << "basis" << YAML::Value << b.name; }
    void operator()(const CoefficientStateConfig& c) const {
        out << YAML::Key << "coefficients" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "c_rr" << YAML::Value;
        emit_complex(out, c.c_rr);
        out << YAML::Key << "c_rl" << YAML::Value;
        emit_complex(out, c.c_rl);
        out << YAML::Key << "c_ll" << YAML::Value;
        emit_complex(out, c.c_ll);
        out << YAML::Key << "normalize" << YAML::Value << c.normalize;
        out << YAML::EndMap;
    }
    void operator()(const ZetaStateConfig& z) const {
        out << YAML::Key << "zeta" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "z" << YAML::Value;
        emit_real(out, z.z);
        out << YAML::Key << "y" << YAML::Value;
        emit_real(out, z.y);
        out << YAML::EndMap;
    }
    void operator()(const KernelConfig& k) const {
        out << YAML::Key << "kernel" << YAML::Value << YAML::BeginMap;
        if (k.profiles) {
            out << YAML::Key << "profiles" << YAML::Value << YAML::BeginSeq;
            for (const auto& p : *k.profiles) {
                out << YAML::BeginMap;
                emit_envelope(out, p);
                out << YAML::EndMap;
            }
            out << YAML::EndSeq;
        } else {
            out << YAML::Key << "point" << YAML::Value << *k.point;
        }
        out << YAML::Key << "coefficients" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "k11" << YAML::Value;
        emit_complex(out, k.k11);
        out << YAML::Key << "k12" << YAML::Value;
        emit_complex(out, k.k12);
        out << YAML::Key << "k22" << YAML::Value;
        emit_complex(out, k.k22);
        out << YAML::EndMap;
        out << YAML::Key << "normalize" << YAML::Value << k.normalize;
        out << YAML::EndMap;
    }
    void operator()(const OnePhotonStateConfig& s) const {
        out << YAML::Key << "one_photon" << YAML::Value << YAML::BeginMap;
        if (mode == ScenarioMode::single) {
            out << YAML::Key << "c_r" << YAML::Value;
            emit_complex(out, s.c_r);
            out << YAML::Key << "c_l" << YAML::Value;
            emit_complex(out, s.c_l);
        } else {
            for (const auto* side : {&s.right, &s.left}) {
                out << YAML::Key << (side == &s.right ? "right" : "left") << YAML::Value << YAML::BeginMap;
                emit_envelope(out, side->profile);
                out << YAML::Key << "amplitude" << YAML::Value;
                emit_complex(out, side->amplitude);
                out << YAML::EndMap;
            }
        }
        out << YAML::Key << "normalize" << YAML::Value << s.normalize;
        out << YAML::EndMap;
    }
};

}  // namespace

ScenarioConfig parse_scenario(std::string_view text) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::Exception& e) {
        throw ConfigError("<document>", std::string("malformed config: ") + e.what());
    }
    if (!root || root.IsNull()) throw ConfigError("<document>", "config is empty");
    try {
        allow_keys(root, "", {"mode", "cavity", "state", "point", "grid", "envelopes", "sweep"});
        ScenarioConfig c;
        if (const YAML::Node m = root["mode"]) {
            const std::string s = read_string(m, "mode");
            if (s == "single") {
                c.mode = ScenarioMode::single;
            } else if (s == "continuous") {
                c.mode = ScenarioMode::continuous;
            } else {
                throw ConfigError("mode", "expected single or continuous");
            }
        }
        if (!root["cavity"]) throw ConfigError("cavity", "required field is missing");
        c.cavity = read_cavity(root["cavity"], "cavity");
        if (const YAML::Node s = root["state"]) c.state = read_state(s, "state", c.mode);
        if (const YAML::Node p = root["point"]) c.point = read_point(p, "point");
        if (const YAML::Node g = root["grid"]) c.grid = read_grid(g, "grid");
        if (const YAML::Node e = root["envelopes"]) {
            allow_keys(e, "envelopes", {"right", "left"});
            for (const char* side : {"right", "left"}) {
                if (!e[side]) throw ConfigError(join("envelopes", side), "required field is missing");
            }
            c.envelopes = std::array<EnvelopeConfig, 2>{read_envelope(e["right"], "envelopes.right"),
                                                        read_envelope(e["left"], "envelopes.left")};
        }
        if (const YAML::Node s = root["sweep"]) {
            if (!s.IsSequence()) throw ConfigError("sweep", "expected a list of axes");
            for (std::size_t i = 0; i < s.size(); ++i) c.sweep.push_back(read_axis(s[i], index_path("sweep", i)));
        }
        check_consistency(c);
        return c;
    } catch (const YAML::Exception& e) {
        throw ConfigError("<document>", std::string("malformed config: ") + e.what());
    }
}

ScenarioConfig load_scenario(const std::string& path) {
    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw ConfigError("--config", "cannot open '" + path + "'");
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    return parse_scenario(text);
}

std::string serialize_scenario(const ScenarioConfig& c) {
    YAML::Emitter out;
    out << YAML::BeginMap;
    out << YAML::Key << "mode" << YAML::Value << (c.mode == ScenarioMode::single ? "single" : "continuous");

    out << YAML::Key << "cavity" << YAML::Value << YAML::BeginMap;
    if (c.cavity.R) {
        out << YAML::Key << "R" << YAML::Value;
        emit_real(out, *c.cavity.R);
    } else {
        out << YAML::Key << "mirror1" << YAML::Value;
        emit_mirror(out, c.cavity.mirror1);
        out << YAML::Key << "mirror2" << YAML::Value;
        emit_mirror(out, c.cavity.mirror2);
    }
    out << YAML::Key << "length_over_c" << YAML::Value;
    emit_real(out, c.cavity.length_over_c);
    out << YAML::EndMap;

    if (!std::holds_alternative<std::monostate>(c.state)) {
        out << YAML::Key << "state" << YAML::Value << YAML::BeginMap;
        std::visit(StateEmitter{out, c.mode}, c.state);
        out << YAML::EndMap;
    }
    if (c.point.x || c.point.omega || c.point.N) {
        out << YAML::Key << "point" << YAML::Value << YAML::BeginMap;
        if (c.point.x) {
            out << YAML::Key << "x" << YAML::Value;
            emit_real(out, *c.point.x);
        }
        if (c.point.omega) {
            out << YAML::Key << "omega" << YAML::Value;
            emit_real(out, *c.point.omega);
        }
        if (c.point.N) out << YAML::Key << "N" << YAML::Value << *c.point.N;
        out << YAML::EndMap;
    }
    if (c.grid) {
        out << YAML::Key << "grid" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "start" << YAML::Value;
        emit_real(out, c.grid->start);
        out << YAML::Key << "stop" << YAML::Value;
        emit_real(out, c.grid->stop);
        out << YAML::Key << "count" << YAML::Value << c.grid->count;
        out << YAML::EndMap;
    }
    if (c.envelopes) {
        out << YAML::Key << "envelopes" << YAML::Value << YAML::BeginMap;
        for (int i = 0; i < 2; ++i) {
            out << YAML::Key << (i == 0 ? "right" : "left") << YAML::Value << YAML::BeginMap;
            emit_envelope(out, (*c.envelopes)[i]);
            out << YAML::EndMap;
        }
        out << YAML::EndMap;
    }
    if (!c.sweep.empty()) {
        out << YAML::Key << "sweep" << YAML::Value << YAML::BeginSeq;
        for (const auto& a : c.sweep) {
            out << YAML::BeginMap;
            out << YAML::Key << "variable" << YAML::Value << std::string(to_string(a.variable));
            out << YAML::Key << "start" << YAML::Value;
            emit_real(out, a.start);
            out << YAML::Key << "stop" << YAML::Value;
            emit_real(out, a.stop);
            out << YAML::Key << "count" << YAML::Value << a.count;
            out << YAML::Key << "endpoint" << YAML::Value << a.endpoint;
            out << YAML::EndMap;
        }
        out << YAML::EndSeq;
    }
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

Cavity build_cavity(const CavityConfig& config) {
    auto mirror = [](const MirrorConfig& m, const std::string& path) {
        try {
            if (m.R) return from_power_reflectance(PowerReflectance<double>(*m.R));
            return validate<double>(m.r, m.t);
        } catch (const Error& e) {
            throw ConfigError(path, e.what());
        }
    };
    if (config.R) {
        const auto m = mirror(MirrorConfig{config.R, {}, {}}, "cavity.R");
        return Cavity(m, m, config.length_over_c);
    }
    return Cavity(mirror(config.mirror1, "cavity.mirror1"), mirror(config.mirror2, "cavity.mirror2"),
                  config.length_over_c);
}

}  // namespace fpio
