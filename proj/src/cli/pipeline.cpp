#include "hypvol/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

namespace hypvol {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDiscrepancyTol = 1e-4;

std::string csv_real(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value == 0.0 ? 0.0 : value);
    return buffer;
}

QuadratureOptions quadrature_options(const Config& config) {
    QuadratureOptions options;
    options.tol = config.quadrature_tol;
    return options;
}

std::string mode_error(Command command, const Config& config, const std::string& needed) {
    return to_string(command) + " needs mode " + needed + ", config has " + to_string(config.mode);
}

void put_surface(Report& report, const SurfaceInfo& s) {
    report.set("group.g", s.handlebody_genus);
    report.set("group.e", s.ends);
    report.set("group.k", s.genus);
    report.set("group.end_lengths", s.end_lengths);
    report.set("group.total_end_length", s.total_end_length());
    report.set("group.core_area", s.core_area);
}

void put_fit(Report& report, const std::string& prefix, const ExpansionFit& fit) {
    report.set(prefix + ".c_m2", fit.c_m2);
    report.set(prefix + ".c_log", fit.c_log);
    report.set(prefix + ".V", fit.V);
    report.set(prefix + ".c_2", fit.c_2);
    report.set(prefix + ".residual_norm", fit.residual_norm);
    report.set(prefix + ".condition", fit.condition);
}

/// Records closed-form minus fitted coefficients and warns on each one above tolerance.
void put_discrepancies(Report& report, Convention convention, const ExpansionFit& closed, const ExpansionFit& fitted) {
    const std::string name = to_string(convention);
    const std::pair<const char*, double> rows[] = {
        {"c_m2", closed.c_m2 - fitted.c_m2},
        {"c_log", closed.c_log - fitted.c_log},
        {"V", closed.V - fitted.V},
        {"c_2", closed.c_2 - fitted.c_2},
    };
    for (const auto& [coef, diff] : rows) {
        report.set("discrepancy." + name + "_vs_fit." + coef, diff);
        if (std::abs(diff) > kDiscrepancyTol) {
            report.warn(name + " closed form: coefficient " + coef + " differs from the quadrature fit by " +
                        format_real(diff));
        }
    }
}

void put_fit_stability(Report& report, const ExpansionFit& base, const ExpansionFit& shifted) {
    put_fit(report, "fit.shifted", shifted);
    const double shift = shifted.V - base.V;
    report.set("fit.grid_shift", shift);
    if (std::abs(shift) > kDiscrepancyTol) {
        report.warn("fitted V moves by " + format_real(shift) + " when the epsilon grid is shifted by a factor of 2");
    }
}

EpsilonGrid shifted(const EpsilonGrid& grid) { return grid.scaled(0.5); }

ScalarField make_field(const SurfaceMesh& mesh, const FieldSource& source) {
    switch (source.kind) {
        case FieldKind::zero:
            return constant_field(mesh, 0.0);
        case FieldKind::constant:
            return constant_field(mesh, source.value);
        case FieldKind::log_cosh:
            return sample_field(mesh, [&](double t, double) { return -source.amplitude * std::log(std::cosh(t)); });
        case FieldKind::sin_theta:
            return sample_field(mesh, [&](double, double theta) {
                return source.amplitude * std::sin(2.0 * kPi * source.mode * theta / mesh.period());
            });
        case FieldKind::random:
            return random_smooth_field(mesh, source.modes, source.amplitude, source.seed);
        case FieldKind::csv:
            break;
    }
    throw std::logic_error("csv fields are loaded separately");
}

std::pair<SurfaceMesh, ScalarField> load_anomaly_field(const Config& config, Report& report) {
    const AnomalyConfig& a = config.anomaly;
    if (a.field.kind != FieldKind::csv) {
        SurfaceMesh mesh(a.n_t, a.n_theta, a.half_height, a.period, a.tag);
        ScalarField field = make_field(mesh, a.field);
        return {mesh, field};
    }
    std::filesystem::path path(a.field.path);
    if (path.is_relative() && !config.base_dir.empty()) {
        path = std::filesystem::path(config.base_dir) / path;
    }
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("/field/path", "cannot open grid csv '" + path.string() + "'");
    }
    auto loaded = read_grid_csv(in);
    const SurfaceMesh& mesh = loaded.first;
    if (mesh.n_t() != a.n_t || mesh.n_theta() != a.n_theta || mesh.half_height() != a.half_height ||
        mesh.period() != a.period || mesh.tag() != a.tag) {
        report.warn("grid csv mesh overrides the configured mesh");
    }
    return loaded;
}

void put_mesh(Report& report, const SurfaceMesh& mesh) {
    report.set("mesh.n_t", mesh.n_t());
    report.set("mesh.n_theta", mesh.n_theta());
    report.set("mesh.T", mesh.half_height());
    report.set("mesh.L", mesh.period());
    report.set("mesh.tag", to_string(mesh.tag()));
}

void put_core(Report& report, const PleatedCoreData& core) {
    report.set("core.volume", core.core_volume);
    report.set("core.genus", core.genus);
    report.set("core.area", core.area());
    report.set("core.leaves", core.leaves.size());
    for (std::size_t i = 0; i < core.leaves.size(); ++i) {
        const std::string key = "leaf." + std::to_string(i);
        report.set(key + ".length", core.leaves[i].length);
        report.set(key + ".theta", core.leaves[i].angle);
        report.set(key + ".deficit", core.leaves[i].deficit());
    }
}

bool paper_requested(const Config& config) { return config.convention != ConventionChoice::derived; }

void run_validate(const Config& config, RunResult& result) {
    Report& report = result.report;
    switch (config.mode) {
        case Mode::fuchsian_group: {
            const ValidatedGroup group = validate(build_group(config.group));
            report.set("group.circles", group.circles().size());
            report.set("group.g", group.genus());
            report.set("group.fuchsian", group.fuchsian());
            for (std::size_t i = 0; i < group.pairings().size(); ++i) {
                const Pairing& p = group.pairings()[i];
                const std::string key = "pairing." + std::to_string(i);
                report.set(key + ".source", p.source);
                report.set(key + ".target", p.target);
                report.set(key + ".class", to_string(classify(p.map)));
                if (classify(p.map) == IsometryClass::hyperbolic) {
                    report.set(key + ".translation_length", translation_length(p.map));
                }
            }
            break;
        }
        case Mode::pleated_core:
            config.pleated.check();
            put_core(report, config.pleated);
            break;
        case Mode::anomaly_check: {
            const auto [mesh, field] = load_anomaly_field(config, report);
            put_mesh(report, mesh);
            report.set("field.kind", to_string(config.anomaly.field.kind));
            break;
        }
    }
}

void run_surface_info(const Config& config, RunResult& result) {
    if (config.mode != Mode::fuchsian_group) {
        throw ConfigError("/mode", mode_error(Command::surface_info, config, "fuchsian_group"));
    }
    Report& report = result.report;
    const ValidatedGroup group = validate(build_group(config.group));
    const std::vector<BoundaryArc> arcs = boundary_arcs(group);
    const std::vector<EndCycle> cycles = end_cycles(group);
    const SurfaceInfo surface = surface_invariants(group);
    put_surface(report, surface);
    report.set("group.relation", "g=2k+e-1");
    report.set("group.relation_holds", surface.handlebody_genus == 2 * surface.genus + surface.ends - 1);
    const int printed = surface.genus - surface.ends + 1;
    if (printed != surface.handlebody_genus) {
        report.warn("printed genus relation g = k - e + 1 gives " + std::to_string(printed) + " instead of " +
                    std::to_string(surface.handlebody_genus) + "; the Euler characteristic gives g = 2k + e - 1");
    }
    report.set("arcs.count", arcs.size());
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        const std::string key = "arc." + std::to_string(i);
        report.set(key + ".start", arcs[i].start.position);
        report.set(key + ".end", arcs[i].end.position);
        report.set(key + ".through_infinity", arcs[i].through_infinity);
    }
    report.set("ends.match_tol", 1e-8);
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        const std::string key = "end." + std::to_string(i);
        std::vector<std::size_t> arc_ids;
        std::string exponents;
        for (const CycleStep& step : cycles[i].steps) {
            arc_ids.push_back(step.arc);
            exponents += (exponents.empty() ? "" : ",") + std::to_string(step.exponent);
        }
        report.set(key + ".arcs", arc_ids);
        report.set(key + ".exponents", exponents);
        report.set(key + ".length", cycles[i].length);
        report.set(key + ".trace", std::abs(cycles[i].holonomy.trace().real()));
    }
}

void run_renvol_fuchsian(const Config& config, RunResult& result) {
    Report& report = result.report;
    const ValidatedGroup group = validate(build_group(config.group));
    const SurfaceInfo surface = surface_invariants(group);
    put_surface(report, surface);
    const QuadratureOptions options = quadrature_options(config);

    std::vector<VolumeProfile> profiles;
    std::vector<std::pair<Convention, ExpansionFit>> closed_fits;
    for (Convention c : conventions(config.convention)) {
        const std::string key = "convention." + to_string(c);
        const double V = renvol_fuchsian(surface, c);
        report.set(key + ".V", V);
        if (surface.total_end_length() > 0.0) {
            report.set(key + ".V_per_length", V / surface.total_end_length());
        }
        profiles.push_back(profile_closed(surface, config.grid, c, config.name));
        const ExpansionFit fit = expansion_fit(profiles.back());
        put_fit(report, key + ".closed_fit", fit);
        closed_fits.emplace_back(c, fit);
    }

    profiles.push_back(profile_quadrature(surface, config.grid, options, config.name));
    const ExpansionFit fit = expansion_fit(profiles.back());
    put_fit(report, "fit", fit);
    if (surface.total_end_length() > 0.0) {
        report.set("fit.V_per_length", fit.V / surface.total_end_length());
    }
    put_fit_stability(report, fit, expansion_fit(profile_quadrature(surface, shifted(config.grid), options)));

    for (const auto& [c, closed] : closed_fits) {
        put_discrepancies(report, c, closed, fit);
    }
    if (closed_fits.size() == 2) {
        report.set("discrepancy.paper_vs_derived.V", closed_fits[0].second.V - closed_fits[1].second.V);
    }
    result.csv.push_back({"profile.csv", profile_csv(profiles)});
}

void run_renvol_pleated(const Config& config, RunResult& result) {
    Report& report = result.report;
    const PleatedCoreData& core = config.pleated;
    core.check();
    put_core(report, core);

    std::vector<VolumeProfile> profiles;
    std::vector<std::pair<Convention, ExpansionFit>> closed_fits;
    for (Convention c : conventions(config.convention)) {
        const std::string key = "convention." + to_string(c);
        PleatedResult pleated = renvol_pleated(core, c, config.grid);
        pleated.profile.group = config.name;
        report.set(key + ".V", pleated.V);
        const ExpansionFit fit = expansion_fit(pleated.profile);
        put_fit(report, key + ".closed_fit", fit);
        closed_fits.emplace_back(c, fit);
        profiles.push_back(std::move(pleated.profile));
    }

    QuadratureOptions options = quadrature_options(config);
    options.tol = std::max(options.tol, 1e-8);
    report.set("quadrature.tol", options.tol);
    const auto quadrature_profile = [&](const EpsilonGrid& grid) {
        VolumeProfile profile;
        profile.provenance = Provenance::quadrature;
        profile.group = config.name;
        for (double eps : grid.values()) {
            profile.samples.push_back({eps, pleated_volume_quadrature(core, eps, options)});
        }
        return profile;
    };
    profiles.push_back(quadrature_profile(config.grid));
    const ExpansionFit fit = expansion_fit(profiles.back());
    put_fit(report, "fit", fit);
    put_fit_stability(report, fit, expansion_fit(quadrature_profile(shifted(config.grid))));
    for (const auto& [c, closed] : closed_fits) {
        put_discrepancies(report, c, closed, fit);
    }
    if (paper_requested(config) && !core.leaves.empty()) {
        report.warn("paper convention wedge closed form carries eps to the first power where the squared "
                    "form gives eps^2");
    }
    result.csv.push_back({"profile.csv", profile_csv(profiles)});
}

void run_wedge(const Config& config, RunResult& result) {
    if (config.mode != Mode::pleated_core) {
        throw ConfigError("/mode", mode_error(Command::wedge, config, "pleated_core"));
    }
    Report& report = result.report;
    const PleatedCoreData& core = config.pleated;
    core.check();
    put_core(report, core);

    QuadratureOptions options = quadrature_options(config);
    options.tol = std::max(options.tol, 1e-8);
    report.set("quadrature.tol", options.tol);
    const std::vector<double> eps = config.grid.values();

    std::vector<VolumeProfile> profiles;
    for (Convention c : conventions(config.convention)) {
        VolumeProfile profile;
        profile.provenance = c == Convention::paper ? Provenance::closed_form_paper : Provenance::closed_form_derived;
        for (double e : eps) {
            double total = 0.0;
            for (const PleatLeaf& leaf : core.leaves) {
                total += wedge_volume_closed(leaf, e, c);
            }
            profile.samples.push_back({e, total});
        }
        profiles.push_back(std::move(profile));
        report.set("convention." + to_string(c) + ".V", renvol_pleated(core, c, config.grid).V);
    }

    VolumeProfile quad;
    quad.provenance = Provenance::quadrature;
    std::vector<double> worst(core.leaves.size(), 0.0);
    std::vector<double> largest(core.leaves.size(), 0.0);
    for (double e : eps) {
        double total = 0.0;
        for (std::size_t i = 0; i < core.leaves.size(); ++i) {
            const double q = wedge_volume_quadrature(core.leaves[i], e, options);
            const double d = wedge_volume_closed(core.leaves[i], e, Convention::derived);
            const double err = d != 0.0 ? std::abs(q - d) / std::abs(d) : std::abs(q);
            worst[i] = std::max(worst[i], err);
            largest[i] = std::max(largest[i], std::abs(q));
            total += q;
        }
        quad.samples.push_back({e, total});
    }
    for (std::size_t i = 0; i < core.leaves.size(); ++i) {
        const std::string key = "leaf." + std::to_string(i);
        report.set(key + ".max_volume", largest[i]);
        report.set(key + ".quadrature_vs_derived", worst[i]);
        if (worst[i] > 1e-5) {
            report.warn(key + ": wedge quadrature differs from the derived closed form by " + format_real(worst[i]) +
                        " relative");
        }
    }
    double deficit_sum = 0.0;
    for (const PleatLeaf& leaf : core.leaves) {
        deficit_sum += leaf.deficit() * leaf.length;
    }
    report.set("wedge.deficit_length_sum", deficit_sum);
    if (deficit_sum > 0.0) {
        const ExpansionFit fit = expansion_fit(quad);
        put_fit(report, "fit", fit);
        report.set("fit.V_per_deficit_length", fit.V / deficit_sum);
        for (std::size_t k = 0; k < profiles.size(); ++k) {
            const Convention c =
                profiles[k].provenance == Provenance::closed_form_paper ? Convention::paper : Convention::derived;
            put_discrepancies(report, c, expansion_fit(profiles[k]), fit);
        }
        if (paper_requested(config)) {
            report.warn("paper convention wedge closed form carries eps to the first power where the squared "
                        "form gives eps^2");
        }
    }
    profiles.push_back(std::move(quad));
    result.csv.push_back({"wedge.csv", profile_csv(profiles)});
}

void run_anomaly(const Config& config, RunResult& result) {
    if (config.mode != Mode::anomaly_check) {
        throw ConfigError("/mode", mode_error(Command::anomaly, config, "anomaly_check"));
    }
    Report& report = result.report;
    const auto [mesh, u] = load_anomaly_field(config, report);
    put_mesh(report, mesh);
    report.set("field.kind", to_string(config.anomaly.field.kind));
    const double sup = std::transform_reduce(u.values.begin(), u.values.end(), 0.0,
                                             [](double a, double b) { return std::max(a, b); },
                                             [](double x) { return std::abs(x); });
    report.set("field.max_abs", sup);

    report.set("area.discrete", mesh.area());
    report.set("area.analytic", mesh.analytic_area());
    report.set("area.rel_error", std::abs(mesh.area() - mesh.analytic_area()) / mesh.analytic_area());
    report.set("curvature.R", mesh.scalar_curvature());

    const double grad = gradient_energy(mesh, u);
    report.set("energy.gradient", grad);
    report.set("energy.curvature", mesh.scalar_curvature() * integrate(mesh, u));
    report.set("energy.conformal_change_term", conformal_change_term(mesh, u));

    const ScalarField lap = laplacian(mesh, u);
    ScalarField u_lap = u;
    for (std::size_t k = 0; k < u_lap.values.size(); ++k) {
        u_lap.values[k] *= lap.values[k];
    }
    const double flux = boundary_flux(mesh, u, u);
    const double sbp = integrate(mesh, u_lap) + grad - flux;
    const double sbp_scale = std::max({1.0, std::abs(grad), std::abs(flux)});
    report.set("sbp.residual", sbp / sbp_scale);
    if (std::abs(sbp) > 1e-8 * sbp_scale) {
        report.warn("discrete integration by parts is off by " + format_real(sbp / sbp_scale) + " relative");
    }

    const ScalarField normalized = normalize_area(mesh, u);
    ScalarField exp2u = normalized;
    for (double& x : exp2u.values) {
        x = std::exp(2.0 * x);
    }
    report.set("normalized.shift", normalized.values.empty() ? 0.0 : normalized.values[0] - u.values[0]);
    report.set("normalized.area_error", (integrate(mesh, exp2u) - mesh.area()) / mesh.area());

    const bool hyperbolic = mesh.tag() == MetricTag::hyperbolic_cylinder;
    if (hyperbolic) {
        const double E = jensen_energy(mesh, normalized);
        const double scale = 1.0 + sup * mesh.area();
        report.set("jensen.E", E);
        report.set("jensen.scale", scale);
        report.set("jensen.nonnegative", E >= -1e-6 * scale);
        report.set("jensen.equality_case", "u=0");
        if (E < -1e-6 * scale) {
            report.warn("energy of the area-normalized field is negative: " + format_real(E));
        }
        report.warn("equality case of the energy inequality is u = 0; the printed u = 1 is not area normalized "
                    "and normalizes to u = 0");
    }

    const LiouvillePiece piece = hyperbolic ? LiouvillePiece::hyperbolic_piece : LiouvillePiece::flat_piece;
    const ScalarField residual = liouville_residual(mesh, u, piece);
    double all = 0.0, interior = 0.0;
    for (std::size_t i = 0; i < mesh.n_t(); ++i) {
        for (std::size_t j = 0; j < mesh.n_theta(); ++j) {
            const double r = std::abs(residual(i, j));
            all = std::max(all, r);
            if (i > 0 && i + 1 < mesh.n_t()) {
                interior = std::max(interior, r);
            }
        }
    }
    report.set("liouville.piece", to_string(piece));
    report.set("liouville.max_abs", all);
    report.set("liouville.interior_max_abs", interior);
    if (!hyperbolic && config.anomaly.field.kind == FieldKind::log_cosh && config.anomaly.field.amplitude == 1.0) {
        // phi = -log cosh t has lap phi = -sech^2 t and e^{2 phi} = sech^2 t.
        double error = 0.0;
        for (std::size_t i = 1; i + 1 < mesh.n_t(); ++i) {
            const double sech = 1.0 / std::cosh(mesh.t(i));
            for (std::size_t j = 0; j < mesh.n_theta(); ++j) {
                error = std::max(error, std::abs(residual(i, j) + 2.0 * sech * sech));
            }
        }
        report.set("liouville.analytic_error", error);
    }

    std::ostringstream field_csv, residual_csv;
    write_grid_csv(field_csv, mesh, u);
    write_grid_csv(residual_csv, mesh, residual);
    result.csv.push_back({"field.csv", field_csv.str()});
    result.csv.push_back({"residual.csv", residual_csv.str()});
}

void fail(RunResult& result, Command command, const Config& config, int code, const std::string& kind,
          const std::string& message) {
    result = RunResult{};
    result.exit_code = code;
    result.report.set("status", "error");
    result.report.set("command", to_string(command));
    if (!config.name.empty()) {
        result.report.set("name", config.name);
    }
    result.report.set("error.kind", kind);
    result.report.set("error.message", message);
}

}  // namespace

std::string to_string(Command command) {
    switch (command) {
        case Command::validate: return "validate";
        case Command::surface_info: return "surface-info";
        case Command::renvol: return "renvol";
        case Command::wedge: return "wedge";
        case Command::anomaly: return "anomaly";
    }
    return "unknown";
}

std::optional<Command> command_from_string(const std::string& name) {
    for (Command c : {Command::validate, Command::surface_info, Command::renvol, Command::wedge, Command::anomaly}) {
        if (to_string(c) == name) {
            return c;
        }
    }
    return std::nullopt;
}

std::string profile_csv(const std::vector<VolumeProfile>& profiles) {
    std::string out = "epsilon,lambda,vol,provenance\n";
    for (const VolumeProfile& profile : profiles) {
        for (const VolumeSample& s : profile.samples) {
            out += csv_real(s.epsilon) + ',' + csv_real(-std::log(s.epsilon)) + ',' + csv_real(s.volume) + ',' +
                   to_string(profile.provenance) + '\n';
        }
    }
    return out;
}

RunResult run(Command command, const Config& config) {
    RunResult result;
    result.report.set("status", "ok");
    result.report.set("command", to_string(command));
    if (!config.name.empty()) {
        result.report.set("name", config.name);
    }
    result.report.set("mode", to_string(config.mode));
    result.report.set("convention", to_string(config.convention));
    try {
        check_config(config);
        switch (command) {
            case Command::validate:
                run_validate(config, result);
                break;
            case Command::surface_info:
                run_surface_info(config, result);
                break;
            case Command::renvol:
                if (config.mode == Mode::fuchsian_group) {
                    run_renvol_fuchsian(config, result);
                } else if (config.mode == Mode::pleated_core) {
                    run_renvol_pleated(config, result);
                } else {
                    throw ConfigError("/mode", mode_error(command, config, "fuchsian_group or pleated_core"));
                }
                break;
            case Command::wedge:
                run_wedge(config, result);
                break;
            case Command::anomaly:
                run_anomaly(config, result);
                break;
        }
    } catch (const ConfigError& e) {
        fail(result, command, config, exit_code::config, "config", e.what());
    } catch (const ValidationError& e) {
        fail(result, command, config, exit_code::validation, "validation." + to_string(e.kind()), e.what());
        result.report.set("error.circles", e.circles());
        result.report.set("error.pairings", e.pairings());
    } catch (const TopologyError& e) {
        fail(result, command, config, exit_code::validation, "topology", e.what());
    } catch (const FitError& e) {
        fail(result, command, config, exit_code::numerical, "numerical.fit", e.what());
    } catch (const QuadratureError& e) {
        fail(result, command, config, exit_code::numerical, "numerical.quadrature", e.what());
    } catch (const DomainError& e) {
        fail(result, command, config, exit_code::validation, "domain", e.what());
    } catch (const std::invalid_argument& e) {
        fail(result, command, config, exit_code::validation, "invalid_argument", e.what());
    } catch (const std::exception& e) {
        fail(result, command, config, exit_code::numerical, "internal", e.what());
    }
    return result;
}

}  // namespace hypvol
