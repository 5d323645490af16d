// Acceptance run: one PASS/FAIL line per criterion, with the measured quantities and wall time.

#include "hypvol/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace hypvol;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

Config config_file(const std::string& name) { return load_config(std::string(HYPVOL_CONFIG_DIR) + "/" + name); }

SurfaceInfo surface_of(const std::string& name) {
    return surface_invariants(validate(build_group(config_file(name).group)));
}

double number(const Report& r, const std::string& key) { return r.has(key) ? std::stod(r.get(key)) : NAN; }

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

const std::vector<std::string> kGroups = {"btz.json", "g2_adjacent.json", "g2_crossed.json", "g3.json"};

Outcome worked_example() {
    const RunResult r = run(Command::renvol, config_file("btz.json"));
    const Report& rep = r.report;
    const double fit = number(rep, "fit.V");
    const double paper = number(rep, "convention.paper.V");
    const double derived = number(rep, "convention.derived.V");
    const bool pass = r.exit_code == 0 && rep.get("group.e") == "2" && rep.get("group.k") == "0" &&
                      rep.get("group.end_lengths") == "2,2" && number(rep, "group.core_area") == 0.0 &&
                      std::abs(fit + kPi) <= 1e-4 && std::abs(derived + kPi) <= 1e-12 &&
                      std::abs(paper + 2 * kPi) <= 1e-12;
    return {pass, "e=" + rep.get("group.e") + " k=" + rep.get("group.k") + " L=(" + rep.get("group.end_lengths") +
                      ") fitted V=" + rep.get("fit.V") + " |V+pi|=" + fmt(std::abs(fit + kPi)) +
                      " paper V=" + rep.get("convention.paper.V") + " derived V=" + rep.get("convention.derived.V")};
}

Outcome coarea() {
    const double h = 1e-3;
    double worst = 0.0;
    for (const char* name : {"btz.json", "g2_crossed.json"}) {
        const SurfaceInfo s = surface_of(name);
        for (double lambda : {0.5, 1.0, 2.0}) {
            const double dv = (volume_quadrature(s, std::exp(-(lambda + h))) -
                               volume_quadrature(s, std::exp(-(lambda - h)))) / (2 * h);
            const double area = level_area(s, lambda);
            worst = std::max(worst, std::abs(dv - area) / area);
        }
    }
    return {worst <= 1e-4, "max |dVol/dlambda - Area|/Area = " + fmt(worst)};
}

Outcome fit_exactness() {
    double worst_coef = 0.0;
    const double sets[][4] = {{3, -1, -2, 0.5}, {1e3, 25, -7, -3}, {0.1, 0, 4.5, 10}};
    for (const auto& c : sets) {
        std::vector<VolumeSample> samples;
        for (double e : EpsilonGrid{}.values()) {
            samples.push_back({e, c[0] / (e * e) + c[1] * std::log(e) + c[2] + c[3] * e * e});
        }
        const ExpansionFit f = expansion_fit(samples);
        const double got[4] = {f.c_m2, f.c_log, f.V, f.c_2};
        for (int i = 0; i < 4; ++i) {
            worst_coef = std::max(worst_coef, std::abs(got[i] - c[i]));
        }
    }
    double worst_shift = 0.0;
    for (const std::string& name : kGroups) {
        const SurfaceInfo s = surface_of(name);
        const double base = expansion_fit(profile_quadrature(s, {})).V;
        const double shifted = expansion_fit(profile_quadrature(s, EpsilonGrid{}.scaled(0.5))).V;
        worst_shift = std::max(worst_shift, std::abs(base - shifted));
    }
    return {worst_coef <= 1e-8 && worst_shift < 1e-4,
            "synthetic max coefficient error " + fmt(worst_coef) + ", quadrature V shift under eps x 1/2 " +
                fmt(worst_shift)};
}

Outcome proportionality() {
    std::vector<double> ratios;
    std::string detail = "V/sum(L):";
    for (const std::string& name : kGroups) {
        const SurfaceInfo s = surface_of(name);
        ratios.push_back(expansion_fit(profile_quadrature(s, {})).V / s.total_end_length());
        detail += " " + std::to_string(s.handlebody_genus) + "/" + std::to_string(s.ends) + "->" +
                  format_real(ratios.back());
    }
    double spread = 0.0, off = 0.0;
    for (double r : ratios) {
        spread = std::max(spread, std::abs(r - ratios.front()));
        off = std::max(off, std::abs(r + kPi / 4));
    }
    detail += "; spread " + fmt(spread) + ", |ratio + pi/4| " + fmt(off) + "; paper constant -pi/2 differs by " +
              fmt(std::abs(ratios.front() + kPi / 2)) + " (flagged)";
    return {ratios.size() >= 3 && spread <= 1e-4 && off <= 1e-4, detail};
}

Outcome dichotomy() {
    double worst = 0.0;
    std::string detail;
    bool pass = true;
    for (const char* name : {"g2_adjacent.json", "g2_crossed.json"}) {
        const ValidatedGroup g = validate(build_group(config_file(name).group));
        const SurfaceInfo s = surface_invariants(g);
        const auto arcs = boundary_arcs(g);
        for (const BoundaryArc& arc : arcs) {
            const std::size_t j = arc.end.circle;
            const Pairing& p = g.pairings()[g.pairing_of(j)];
            const Mobius m = p.source == j ? p.map : p.map.inverse();
            const double image = apply_boundary(m, arc.end.position).real();
            double best = INFINITY;
            for (const BoundaryArc& other : arcs) {
                best = std::min(best, std::abs(image - other.start.position) / std::max(1.0, std::abs(image)));
            }
            worst = std::max(worst, best);
        }
        detail += std::string(name) + " (e,k)=(" + std::to_string(s.ends) + "," + std::to_string(s.genus) + ") ";
        pass = pass && 2 * s.genus + s.ends - 1 == 2;
    }
    const SurfaceInfo adj = surface_of("g2_adjacent.json");
    const SurfaceInfo crs = surface_of("g2_crossed.json");
    pass = pass && adj.ends == 3 && adj.genus == 0 && crs.ends == 1 && crs.genus == 1 && worst <= 1e-8;
    return {pass, detail + "max endpoint mismatch " + fmt(worst)};
}

Outcome reduction() {
    int checks = 0, passed = 0;
    for (const std::string& name : kGroups) {
        const SurfaceInfo s = surface_of(name);
        for (Convention c : {Convention::paper, Convention::derived}) {
            ++checks;
            passed += fuchsian_reduction_check(s, c).passed ? 1 : 0;
        }
    }
    return {passed == checks, std::to_string(passed) + "/" + std::to_string(checks) + " exact matches"};
}

Outcome wedge_oracle() {
    double worst = 0.0, linear = 0.0, flat = 0.0;
    const QuadratureOptions options{1e-8};
    for (double L : {1.0, 2.0}) {
        for (double theta : {kPi / 3, 2 * kPi / 3}) {
            for (double eps : {std::exp(-1.0), 0.1}) {
                const PleatLeaf leaf{L, theta};
                const double q = wedge_volume_quadrature(leaf, eps, options);
                const double d = (kPi - theta) * L * std::pow(std::sinh(-std::log(eps)), 2) / 2;
                worst = std::max(worst, std::abs(q - d) / d);
                if (L == 1.0) {
                    const double q2 = wedge_volume_quadrature({2 * L, theta}, eps, options);
                    linear = std::max(linear, std::abs(q2 - 2 * q) / (2 * q));
                }
            }
        }
    }
    for (double eps : {std::exp(-1.0), 0.1}) {
        flat = std::max(flat, std::abs(wedge_volume_quadrature({1.5, kPi}, eps, options)));
    }
    return {worst <= 1e-5 && flat == 0.0 && linear <= 1e-6,
            "max relative error " + fmt(worst) + ", theta=pi volume " + fmt(flat) + ", linearity error " + fmt(linear)};
}

Outcome jensen() {
    const SurfaceMesh mesh(128, 128, 2.0, 2 * kPi, MetricTag::hyperbolic_cylinder);
    double worst = INFINITY;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const ScalarField u = normalize_area(mesh, random_smooth_field(mesh, 4, 1.0, seed));
        double sup = 0.0;
        for (double x : u.values) {
            sup = std::max(sup, std::abs(x));
        }
        worst = std::min(worst, jensen_energy(mesh, u) / (1.0 + sup * mesh.area()));
    }
    const double zero = std::abs(jensen_energy(mesh, normalize_area(mesh, constant_field(mesh, 0.0))));
    const double one = std::abs(jensen_energy(mesh, normalize_area(mesh, constant_field(mesh, 1.0))));
    return {worst >= -1e-6 && zero <= 1e-10 && one <= 1e-10,
            "min E/scale over 100 fields " + fmt(worst) + ", |E(0)| " + fmt(zero) + ", |E(normalized 1)| " + fmt(one)};
}

Outcome liouville() {
    const SurfaceMesh h(33, 16, 2.0, 2 * kPi, MetricTag::hyperbolic_cylinder);
    const SurfaceMesh f(33, 16, 2.0, 2 * kPi, MetricTag::flat_cylinder);
    bool exact = true;
    for (double x : liouville_residual(h, constant_field(h, 0.0), LiouvillePiece::hyperbolic_piece).values) {
        exact = exact && x == 0.0;
    }
    for (double x : liouville_residual(f, constant_field(f, 0.0), LiouvillePiece::flat_piece).values) {
        exact = exact && x == -1.0;
    }
    std::vector<double> errors;
    for (std::size_t n : {51u, 101u, 201u}) {
        const SurfaceMesh m(n, 8, 2.0, 2 * kPi, MetricTag::flat_cylinder);
        const ScalarField phi = sample_field(m, [](double t, double) { return -std::log(std::cosh(t)); });
        const ScalarField r = liouville_residual(m, phi, LiouvillePiece::flat_piece);
        double err = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double s = 1.0 / std::cosh(m.t(i));
            for (std::size_t j = 0; j < m.n_theta(); ++j) {
                err = std::max(err, std::abs(r(i, j) + 2 * s * s));
            }
        }
        errors.push_back(err);
    }
    const double order = std::min(std::log2(errors[0] / errors[1]), std::log2(errors[1] / errors[2]));
    return {exact && order >= 1.9, std::string("constant residuals ") + (exact ? "exact" : "NOT exact") +
                                       ", observed order " + fmt(order) + " (interior nodes)"};
}

Outcome determinism() {
    int runs = 0, identical = 0;
    const std::pair<Command, const char*> jobs[] = {
        {Command::renvol, "btz.json"},     {Command::renvol, "g2_crossed.json"}, {Command::surface_info, "g3.json"},
        {Command::wedge, "pleated.json"},  {Command::renvol, "pleated.json"},   {Command::anomaly, "anomaly.json"},
    };
    for (const auto& [cmd, name] : jobs) {
        const Config c = config_file(name);
        const RunResult a = run(cmd, c);
        const RunResult b = run(cmd, c);
        bool same = a.report.str() == b.report.str() && a.csv.size() == b.csv.size();
        for (std::size_t i = 0; same && i < a.csv.size(); ++i) {
            same = a.csv[i].content == b.csv[i].content;
        }
        ++runs;
        identical += same ? 1 : 0;
    }
    const SurfaceInfo s = surface_of("g3.json");
    QuadratureOptions serial, parallel;
    serial.threads = 1;
    parallel.threads = 8;
    const auto p1 = profile_quadrature(s, {}, serial);
    const auto p8 = profile_quadrature(s, {}, parallel);
    bool threads_same = true;
    for (std::size_t i = 0; i < p1.samples.size(); ++i) {
        threads_same = threads_same && p1.samples[i].volume == p8.samples[i].volume;
    }
    return {identical == runs && threads_same, std::to_string(identical) + "/" + std::to_string(runs) +
                                                   " pipeline reruns byte identical, 1 vs 8 threads " +
                                                   (threads_same ? "identical" : "DIFFER")};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        std::function<Outcome()> check;
    };
    const std::vector<Criterion> criteria = {
        {1, "worked cyclic example", 10, worked_example},
        {2, "coarea invariant", 30, coarea},
        {3, "expansion-fit exactness", 0, fit_exactness},
        {4, "volume proportional to total end length", 0, proportionality},
        {5, "four-circle dichotomy", 0, dichotomy},
        {6, "pleated formula reduces to the Fuchsian one", 0, reduction},
        {7, "wedge oracle", 60, wedge_oracle},
        {8, "energy positivity", 0, jensen},
        {9, "Liouville residuals", 0, liouville},
        {10, "determinism", 0, determinism},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.check();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_s > 0 && seconds >= c.budget_s) {
            out.pass = false;
            out.detail += "; over the " + fmt(c.budget_s) + " s budget";
        }
        failures += out.pass ? 0 : 1;
        std::printf("[%s] %2d %s: %s (%.2f s)\n", out.pass ? "PASS" : "FAIL", c.id, c.name, out.detail.c_str(), seconds);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
