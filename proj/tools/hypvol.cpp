// hypvol: batch front end for the renormalized volume pipelines.
//
//   hypvol renvol --config configs/btz.json --out results --csv
//
// The report goes to stdout (and to <out>/report.txt when --out is given); --csv writes the
// profile or grid CSV files next to it.

#include "hypvol/pipeline.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

bool write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Renormalized volume of Schottky and pleated hyperbolic 3-manifolds"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    bool csv = false;
    bool echo = false;
    std::optional<std::string> convention;
    std::optional<double> quad_tol, eps_min, eps_max;
    std::optional<int> eps_count;

    const std::pair<hypvol::Command, const char*> commands[] = {
        {hypvol::Command::validate, "Check the config and the Schottky data"},
        {hypvol::Command::surface_info, "Topology of the conformal boundary"},
        {hypvol::Command::renvol, "Renormalized volume by closed form and quadrature fit"},
        {hypvol::Command::wedge, "Wedge volumes of a pleated core"},
        {hypvol::Command::anomaly, "Conformal anomaly energy and Liouville residuals"},
    };
    for (const auto& [command, help] : commands) {
        CLI::App* sub = app.add_subcommand(hypvol::to_string(command), help);
        sub->add_option("--config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "Directory for report.txt and CSV files");
        sub->add_flag("--csv", csv, "Write CSV profiles (requires --out)");
        sub->add_flag("--echo-config", echo, "Print the canonical form of the config and exit");
        sub->add_option("--convention", convention, "paper, derived or both")
            ->check(CLI::IsMember({"paper", "derived", "both"}));
        sub->add_option("--quad-tol", quad_tol, "Relative quadrature tolerance");
        sub->add_option("--eps-min", eps_min, "Smallest epsilon of the profile grid");
        sub->add_option("--eps-max", eps_max, "Largest epsilon of the profile grid");
        sub->add_option("--eps-count", eps_count, "Number of epsilon samples");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string name = app.get_subcommands().front()->get_name();
    const hypvol::Command command = *hypvol::command_from_string(name);

    hypvol::Config config;
    try {
        config = hypvol::load_config(config_path);
        if (convention) config.convention = hypvol::convention_choice_from_string(*convention);
        if (quad_tol) config.quadrature_tol = *quad_tol;
        if (eps_min) config.grid.min = *eps_min;
        if (eps_max) config.grid.max = *eps_max;
        if (eps_count) config.grid.count = *eps_count;
        hypvol::check_config(config);
    } catch (const hypvol::ConfigError& e) {
        hypvol::Report report;
        report.set("status", "error");
        report.set("command", name);
        report.set("error.kind", "config");
        report.set("error.where", e.where());
        report.set("error.message", e.what());
        std::cout << report;
        return hypvol::exit_code::config;
    }

    if (echo) {
        std::cout << hypvol::echo_config(config);
        return hypvol::exit_code::ok;
    }

    const hypvol::RunResult result = hypvol::run(command, config);
    std::cout << result.report;

    if (!out_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        const std::filesystem::path dir(out_dir);
        if (ec || !write_file(dir / "report.txt", result.report.str())) {
            std::cerr << "hypvol: cannot write to " << out_dir << '\n';
            return hypvol::exit_code::config;
        }
        if (csv) {
            for (const hypvol::CsvFile& file : result.csv) {
                if (!write_file(dir / file.name, file.content)) {
                    std::cerr << "hypvol: cannot write " << file.name << '\n';
                    return hypvol::exit_code::config;
                }
            }
        }
    } else if (csv) {
        std::cerr << "hypvol: --csv needs --out\n";
    }
    return result.exit_code;
}
