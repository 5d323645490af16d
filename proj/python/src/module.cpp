#include "hypvol/anomaly.hpp"
#include "hypvol/config.hpp"
#include "hypvol/pipeline.hpp"
#include "hypvol/pleated.hpp"
#include "hypvol/renvol.hpp"
#include "hypvol/surface_topology.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>

namespace py = pybind11;
using namespace hypvol;

namespace {

Convention convention_arg(const std::string& name) {
    if (name == "paper") return Convention::paper;
    if (name == "derived") return Convention::derived;
    throw py::value_error("convention must be 'paper' or 'derived'");
}

py::dict surface_dict(const SurfaceInfo& s) {
    py::dict d;
    d["ends"] = s.ends;
    d["genus"] = s.genus;
    d["handlebody_genus"] = s.handlebody_genus;
    d["end_lengths"] = s.end_lengths;
    d["total_end_length"] = s.total_end_length();
    d["core_area"] = s.core_area;
    return d;
}

SurfaceInfo surface_arg(int handlebody_genus, std::vector<double> end_lengths) {
    return make_surface_info(handlebody_genus, std::move(end_lengths));
}

py::dict run_dict(Command command, const Config& config) {
    const RunResult result = run(command, config);
    py::dict entries;
    for (const auto& [key, value] : result.report.entries()) entries[py::str(key)] = value;
    py::dict csv;
    for (const auto& file : result.csv) csv[py::str(file.name)] = file.content;
    py::dict d;
    d["exit_code"] = result.exit_code;
    d["report"] = result.report.str();
    d["entries"] = entries;
    d["warnings"] = result.report.warnings();
    d["csv"] = csv;
    return d;
}

Command command_arg(const std::string& name) {
    const auto command = command_from_string(name);
    if (!command) throw py::value_error("unknown command: " + name);
    return *command;
}

SurfaceMesh mesh_arg(std::size_t n_t, std::size_t n_theta, double half_height, double period,
                     const std::string& tag) {
    return SurfaceMesh(n_t, n_theta, half_height, period, metric_tag_from_string(tag));
}

ScalarField field_arg(const SurfaceMesh& mesh, const py::array_t<double, py::array::c_style | py::array::forcecast>& u) {
    if (u.ndim() != 2 || static_cast<std::size_t>(u.shape(0)) != mesh.n_t() ||
        static_cast<std::size_t>(u.shape(1)) != mesh.n_theta())
        throw py::value_error("field must have shape (n_t, n_theta)");
    ScalarField f{mesh.n_t(), mesh.n_theta(), std::vector<double>(mesh.size())};
    std::copy_n(u.data(), mesh.size(), f.values.begin());
    return f;
}

py::array_t<double> field_array(const ScalarField& f) {
    py::array_t<double> out({f.n_t, f.n_theta});
    std::copy(f.values.begin(), f.values.end(), out.mutable_data());
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Renormalized volumes of convex cocompact hyperbolic 3-manifolds";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<TopologyError>(m, "TopologyError", PyExc_RuntimeError);
    py::register_exception<FitError>(m, "FitError", PyExc_ValueError);

    py::class_<Config>(m, "Config")
        .def_readonly("name", &Config::name)
        .def_property_readonly("mode", [](const Config& c) { return to_string(c.mode); })
        .def("echo", [](const Config& c) { return echo_config(c); });

    m.def("load_config", [](const std::string& path) {
        Config c = load_config(path);
        check_config(c);
        return c;
    }, py::arg("path"));
    m.def("parse_config", [](const std::string& text) {
        Config c = parse_config(text);
        check_config(c);
        return c;
    }, py::arg("text"));

    m.def("run", [](const std::string& command, const Config& config) { return run_dict(command_arg(command), config); },
          py::arg("command"), py::arg("config"),
          "Runs a pipeline command and returns exit_code, report text, entries, warnings and csv files.");

    m.def("surface_invariants", [](const Config& config) {
        if (config.mode != Mode::fuchsian_group) throw py::value_error("config is not a fuchsian_group");
        return surface_dict(surface_invariants(validate(build_group(config.group))));
    }, py::arg("config"));

    m.def("renvol_fuchsian", [](int g, std::vector<double> lengths, const std::string& convention) {
        return renvol_fuchsian(surface_arg(g, std::move(lengths)), convention_arg(convention));
    }, py::arg("handlebody_genus"), py::arg("end_lengths"), py::arg("convention") = "derived");

    m.def("volume_closed", [](int g, std::vector<double> lengths, double epsilon, const std::string& convention) {
        return volume_closed(surface_arg(g, std::move(lengths)), epsilon, convention_arg(convention));
    }, py::arg("handlebody_genus"), py::arg("end_lengths"), py::arg("epsilon"), py::arg("convention") = "derived");

    m.def("volume_quadrature", [](int g, std::vector<double> lengths, double epsilon, double tol) {
        QuadratureOptions options;
        options.tol = tol;
        return volume_quadrature(surface_arg(g, std::move(lengths)), epsilon, options);
    }, py::arg("handlebody_genus"), py::arg("end_lengths"), py::arg("epsilon"), py::arg("tol") = 1e-10);

    m.def("expansion_fit", [](const std::vector<double>& eps, const std::vector<double>& vol) {
        if (eps.size() != vol.size()) throw py::value_error("epsilon and volume lengths differ");
        std::vector<VolumeSample> samples;
        for (std::size_t i = 0; i < eps.size(); ++i) samples.push_back({eps[i], vol[i]});
        const ExpansionFit fit = expansion_fit(samples);
        py::dict d;
        d["c_m2"] = fit.c_m2;
        d["c_log"] = fit.c_log;
        d["V"] = fit.V;
        d["c_2"] = fit.c_2;
        d["residual_norm"] = fit.residual_norm;
        d["condition"] = fit.condition;
        return d;
    }, py::arg("epsilon"), py::arg("volume"));

    m.def("wedge_volume_closed", [](double length, double angle, double epsilon, const std::string& convention) {
        return wedge_volume_closed({length, angle}, epsilon, convention_arg(convention));
    }, py::arg("length"), py::arg("angle"), py::arg("epsilon"), py::arg("convention") = "derived");

    m.def("wedge_volume_quadrature", [](double length, double angle, double epsilon, double tol) {
        QuadratureOptions options;
        options.tol = tol;
        return wedge_volume_quadrature({length, angle}, epsilon, options);
    }, py::arg("length"), py::arg("angle"), py::arg("epsilon"), py::arg("tol") = 1e-8);

    m.def("random_smooth_field", [](std::size_t n_t, std::size_t n_theta, double T, double L, const std::string& tag,
                                    int modes, double amplitude, std::uint64_t seed) {
        return field_array(random_smooth_field(mesh_arg(n_t, n_theta, T, L, tag), modes, amplitude, seed));
    }, py::arg("n_t"), py::arg("n_theta"), py::arg("T"), py::arg("L"), py::arg("tag") = "hyperbolic_cylinder",
       py::arg("modes") = 3, py::arg("amplitude") = 1.0, py::arg("seed") = 1);

    m.def("jensen_energy", [](const py::array_t<double, py::array::c_style | py::array::forcecast>& u, double T,
                              double L, const std::string& tag) {
        if (u.ndim() != 2) throw py::value_error("field must be two-dimensional");
        const SurfaceMesh mesh = mesh_arg(u.shape(0), u.shape(1), T, L, tag);
        return jensen_energy(mesh, field_arg(mesh, u));
    }, py::arg("u"), py::arg("T"), py::arg("L"), py::arg("tag") = "hyperbolic_cylinder");

    m.def("normalize_area", [](const py::array_t<double, py::array::c_style | py::array::forcecast>& u, double T,
                               double L, const std::string& tag) {
        if (u.ndim() != 2) throw py::value_error("field must be two-dimensional");
        const SurfaceMesh mesh = mesh_arg(u.shape(0), u.shape(1), T, L, tag);
        return field_array(normalize_area(mesh, field_arg(mesh, u)));
    }, py::arg("u"), py::arg("T"), py::arg("L"), py::arg("tag") = "hyperbolic_cylinder");
}
