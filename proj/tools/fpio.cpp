// fpio: scenario scanner for the two-mirror cavity input-output model.
//
// Exit codes: 0 success, 2 config error, 3 numeric degeneracy.

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fpio/commands.hpp"
#include "fpio/errors.hpp"
#include "fpio/scenario.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Options {
    std::string config;
    std::string format;
    std::string output = "-";
    std::optional<long> threads;
    std::optional<long> grid;
};

using Command = std::function<fpio::Table(const fpio::ScenarioConfig&, const fpio::RunOptions&)>;

void emit(const std::string& path, const std::function<void(std::ostream&)>& write) {
    if (path == "-") {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw fpio::ConfigError("--output", "cannot open '" + path + "' for writing");
    write(out);
}

int run(const std::string& name, const Options& o, const Command& command, fpio::OutputFormat default_format) {
    const fpio::ScenarioConfig config = fpio::load_scenario(o.config);
    if (name == "normalize") {
        emit(o.output, [&](std::ostream& out) { out << fpio::serialize_scenario(config); });
        return 0;
    }
    fpio::RunOptions run;
    run.threads = fpio::resolve_threads(o.threads);
    if (o.grid) {
        if (*o.grid < 2) throw fpio::ConfigError("--grid", "must be >= 2");
        run.grid_count = static_cast<std::size_t>(*o.grid);
    }
    fpio::OutputFormat format = default_format;
    if (o.format == "csv") format = fpio::OutputFormat::csv;
    if (o.format == "json") format = fpio::OutputFormat::json;
    const fpio::Table table = command(config, run);
    emit(o.output, [&](std::ostream& out) { fpio::write_table(out, table, format); });
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fabry-Perot input-output scanner"};
    app.require_subcommand(1);

    struct Entry {
        const char* name;
        const char* help;
        Command command;
        fpio::OutputFormat format;
    };
    const Entry entries[] = {
        {"matrices", "Dump B, C, M, G and identity residuals over the frequency grid", fpio::cmd_matrices,
         fpio::OutputFormat::csv},
        {"sweep", "Evaluate ratios and distributions over the sweep axes", fpio::cmd_sweep, fpio::OutputFormat::csv},
        {"two-photon", "Two-photon coincidence ratios and outside distribution", fpio::cmd_two_photon,
         fpio::OutputFormat::json},
        {"one-photon", "One-photon outside distribution", fpio::cmd_one_photon, fpio::OutputFormat::json},
        {"gram", "Gram matrix of the inside two-photon kets and its orthogonal basis", fpio::cmd_gram,
         fpio::OutputFormat::json},
        {"normalize", "Print the config in canonical form", nullptr, fpio::OutputFormat::csv},
    };

    Options options;
    std::map<CLI::App*, const Entry*> lookup;
    for (const auto& e : entries) {
        CLI::App* sub = app.add_subcommand(e.name, e.help);
        sub->add_option("--config", options.config, "Scenario file (YAML or JSON), '-' for stdin")->required();
        sub->add_option("--output", options.output, "Output path, '-' for stdout");
        if (e.command) {
            sub->add_option("--format", options.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
            sub->add_option("--threads", options.threads, "Worker threads (default: FPIO_THREADS or all cores)");
            sub->add_option("--grid", options.grid, "Frequency grid points, overrides grid.count");
        }
        lookup[sub] = &e;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    const Entry* chosen = lookup.at(app.get_subcommands().front());
    try {
        return run(chosen->name, options, chosen->command, chosen->format);
    } catch (const fpio::ConfigError& e) {
        std::cerr << "fpio: config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const fpio::DomainError& e) {
        std::cerr << "fpio: invalid value: " << e.what() << '\n';
        return kExitConfig;
    } catch (const fpio::ValidationError& e) {
        std::cerr << "fpio: invalid value: " << e.what() << '\n';
        return kExitConfig;
    } catch (const fpio::SingularError& e) {
        std::cerr << "fpio: numeric degeneracy: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "fpio: " << e.what() << '\n';
        return 1;
    }
}
