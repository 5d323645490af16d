#include "hypvol/anomaly.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <random>
#include <ostream>
#include <sstream>

namespace hypvol {

std::string to_string(MetricTag tag) {
    return tag == MetricTag::hyperbolic_cylinder ? "hyperbolic_cylinder" : "flat_cylinder";
}

MetricTag metric_tag_from_string(const std::string& name) {
    if (name == "hyperbolic_cylinder") {
        return MetricTag::hyperbolic_cylinder;
    }
    if (name == "flat_cylinder") {
        return MetricTag::flat_cylinder;
    }
    throw std::invalid_argument("unknown metric tag '" + name + "'");
}

std::string to_string(LiouvillePiece piece) {
    return piece == LiouvillePiece::hyperbolic_piece ? "hyperbolic_piece" : "flat_piece";
}

SurfaceMesh::SurfaceMesh(std::size_t n_t, std::size_t n_theta, double half_height, double period, MetricTag tag)
    : n_t_(n_t), n_theta_(n_theta), half_height_(half_height), period_(period), tag_(tag) {
    if (n_t < 3 || n_theta < 3) {
        throw std::invalid_argument("surface mesh needs at least 3 nodes in each direction");
    }
    if (!(half_height > 0.0) || !(period > 0.0)) {
        throw std::invalid_argument("surface mesh needs positive T and L");
    }
    dt_ = 2.0 * half_height / static_cast<double>(n_t - 1);
    dtheta_ = period / static_cast<double>(n_theta);
    weights_.resize(n_t);
    for (std::size_t i = 0; i < n_t; ++i) {
        const double trapezoid = (i == 0 || i + 1 == n_t) ? 0.5 : 1.0;
        weights_[i] = trapezoid * volume_factor(t(i)) * dt_ * dtheta_;
        // same summation order as integrate() so that the area of u = 0 is reproduced exactly
        area_ += weights_[i] * static_cast<double>(n_theta);
    }
}

double SurfaceMesh::volume_factor(double t) const {
    return tag_ == MetricTag::hyperbolic_cylinder ? std::cosh(t) : 1.0;
}

double SurfaceMesh::angular_metric(double t) const {
    const double f = volume_factor(t);
    return f * f;
}

double SurfaceMesh::scalar_curvature() const {
    return tag_ == MetricTag::hyperbolic_cylinder ? -2.0 : 0.0;
}

double SurfaceMesh::analytic_area() const {
    return tag_ == MetricTag::hyperbolic_cylinder ? 2.0 * period_ * std::sinh(half_height_)
                                                  : 2.0 * period_ * half_height_;
}

namespace {

void require_shape(const SurfaceMesh& mesh, const ScalarField& u) {
    if (u.n_t != mesh.n_t() || u.n_theta != mesh.n_theta() || u.values.size() != mesh.size()) {
        throw std::invalid_argument("scalar field does not match the mesh");
    }
}

}  // namespace

ScalarField constant_field(const SurfaceMesh& mesh, double value) {
    return {mesh.n_t(), mesh.n_theta(), std::vector<double>(mesh.size(), value)};
}

ScalarField sample_field(const SurfaceMesh& mesh, const std::function<double(double, double)>& f) {
    ScalarField u = constant_field(mesh, 0.0);
    for (std::size_t i = 0; i < mesh.n_t(); ++i) {
        for (std::size_t j = 0; j < mesh.n_theta(); ++j) {
            u(i, j) = f(mesh.t(i), mesh.theta(j));
        }
    }
    return u;
}

ScalarField random_smooth_field(const SurfaceMesh& mesh, int modes, double amplitude, std::uint64_t seed) {
    if (modes < 1) {
        throw std::invalid_argument("random field needs at least one mode");
    }
    std::mt19937_64 engine(seed);
    const auto uniform = [&engine] { return static_cast<double>(engine() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
    struct Term {
        int m, n;
        double cos_coef, sin_coef;
    };
    std::vector<Term> terms;
    double bound = 0.0;
    for (int m = 0; m < modes; ++m) {
        for (int n = 0; n < modes; ++n) {
            const double decay = 1.0 / ((1.0 + m + n) * (1.0 + m + n));
            const Term term{m, n, decay * uniform(), decay * uniform()};
            bound += std::abs(term.cos_coef) + std::abs(term.sin_coef);
            terms.push_back(term);
        }
    }
    const double scale = bound > 0.0 ? amplitude / bound : 0.0;
    const double T = mesh.half_height(), L = mesh.period();
    return sample_field(mesh, [&](double t, double theta) {
        double value = 0.0;
        for (const Term& term : terms) {
            const double along = std::cos(term.m * std::numbers::pi * (t + T) / (2.0 * T));
            const double phase = 2.0 * std::numbers::pi * term.n * theta / L;
            value += along * (term.cos_coef * std::cos(phase) + term.sin_coef * std::sin(phase));
        }
        return scale * value;
    });
}

double integrate(const SurfaceMesh& mesh, const ScalarField& u) {
    require_shape(mesh, u);
    double total = 0.0;
    for (std::size_t i = 0; i < mesh.n_t(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < mesh.n_theta(); ++j) {
            row += u(i, j);
        }
        total += mesh.weight(i) * row;
    }
    return total;
}

double dirichlet_pairing(const SurfaceMesh& mesh, const ScalarField& u, const ScalarField& v) {
    require_shape(mesh, u);
    require_shape(mesh, v);
    const std::size_t nt = mesh.n_t(), nth = mesh.n_theta();
    const double dt = mesh.dt(), dth = mesh.dtheta();
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < nt; ++i) {
        const double w = mesh.volume_factor(mesh.t(i) + 0.5 * dt) * dth / dt;
        double row = 0.0;
        for (std::size_t j = 0; j < nth; ++j) {
            row += (u(i + 1, j) - u(i, j)) * (v(i + 1, j) - v(i, j));
        }
        total += w * row;
    }
    for (std::size_t i = 0; i < nt; ++i) {
        const double w = mesh.weight(i) / (mesh.angular_metric(mesh.t(i)) * dth * dth);
        double row = 0.0;
        for (std::size_t j = 0; j < nth; ++j) {
            const std::size_t jn = (j + 1) % nth;
            row += (u(i, jn) - u(i, j)) * (v(i, jn) - v(i, j));
        }
        total += w * row;
    }
    return total;
}

double gradient_energy(const SurfaceMesh& mesh, const ScalarField& u) {
    return dirichlet_pairing(mesh, u, u);
}

namespace {

/// Outward-oriented boundary fluxes sqrt(g) dtheta dv/dt at the bottom (i = 0) and top rows.
std::pair<double, double> edge_fluxes(const SurfaceMesh& mesh, const ScalarField& v, std::size_t j) {
    const std::size_t n = mesh.n_t() - 1;
    const double dt = mesh.dt(), dth = mesh.dtheta();
    const double lower = (-3.0 * v(0, j) + 4.0 * v(1, j) - v(2, j)) / (2.0 * dt);
    const double upper = (3.0 * v(n, j) - 4.0 * v(n - 1, j) + v(n - 2, j)) / (2.0 * dt);
    return {mesh.volume_factor(mesh.t(0)) * dth * lower, mesh.volume_factor(mesh.t(n)) * dth * upper};
}

}  // namespace

ScalarField laplacian(const SurfaceMesh& mesh, const ScalarField& v) {
    require_shape(mesh, v);
    const std::size_t nt = mesh.n_t(), nth = mesh.n_theta();
    const double dt = mesh.dt(), dth = mesh.dtheta();
    ScalarField out = constant_field(mesh, 0.0);

    std::vector<double> edge_weight(nt - 1);
    for (std::size_t i = 0; i + 1 < nt; ++i) {
        edge_weight[i] = mesh.volume_factor(mesh.t(i) + 0.5 * dt) * dth / dt;
    }
    for (std::size_t i = 0; i < nt; ++i) {
        const double w = mesh.weight(i);
        const double angular = 1.0 / (mesh.angular_metric(mesh.t(i)) * dth * dth);
        for (std::size_t j = 0; j < nth; ++j) {
            double flux_in = 0.0;
            double flux_out = 0.0;
            if (i == 0) {
                flux_in = edge_fluxes(mesh, v, j).first;
            } else {
                flux_in = edge_weight[i - 1] * (v(i, j) - v(i - 1, j));
            }
            if (i + 1 == nt) {
                flux_out = edge_fluxes(mesh, v, j).second;
            } else {
                flux_out = edge_weight[i] * (v(i + 1, j) - v(i, j));
            }
            const double vp = v(i, (j + 1) % nth);
            const double vm = v(i, (j + nth - 1) % nth);
            out(i, j) = (flux_out - flux_in) / w + angular * (vp - 2.0 * v(i, j) + vm);
        }
    }
    return out;
}

double boundary_flux(const SurfaceMesh& mesh, const ScalarField& u, const ScalarField& v) {
    require_shape(mesh, u);
    require_shape(mesh, v);
    const std::size_t n = mesh.n_t() - 1;
    double total = 0.0;
    for (std::size_t j = 0; j < mesh.n_theta(); ++j) {
        const auto [lower, upper] = edge_fluxes(mesh, v, j);
        total += u(n, j) * upper - u(0, j) * lower;
    }
    return total;
}

double conformal_change_term(const SurfaceMesh& mesh, const ScalarField& u) {
    return 0.25 * (gradient_energy(mesh, u) + mesh.scalar_curvature() * integrate(mesh, u));
}

double jensen_energy(const SurfaceMesh& mesh, const ScalarField& u) {
    if (mesh.tag() != MetricTag::hyperbolic_cylinder) {
        throw DomainError("jensen_energy is defined on hyperbolic meshes only");
    }
    return gradient_energy(mesh, u) - 2.0 * integrate(mesh, u);
}

ScalarField normalize_area(const SurfaceMesh& mesh, const ScalarField& u) {
    require_shape(mesh, u);
    ScalarField exp2u = u;
    for (double& x : exp2u.values) {
        x = std::exp(2.0 * x);
    }
    const double shift = -0.5 * std::log(integrate(mesh, exp2u) / mesh.area());
    ScalarField out = u;
    for (double& x : out.values) {
        x += shift;
    }
    return out;
}

ScalarField liouville_residual(const SurfaceMesh& mesh, const ScalarField& phi, LiouvillePiece piece) {
    const bool hyperbolic = piece == LiouvillePiece::hyperbolic_piece;
    if (hyperbolic != (mesh.tag() == MetricTag::hyperbolic_cylinder)) {
        throw DomainError(to_string(piece) + " residual does not apply to a " + to_string(mesh.tag()) + " mesh");
    }
    ScalarField out = laplacian(mesh, phi);
    for (std::size_t k = 0; k < out.values.size(); ++k) {
        out.values[k] += (hyperbolic ? 1.0 : 0.0) - std::exp(2.0 * phi.values[k]);
    }
    return out;
}

void write_grid_csv(std::ostream& os, const SurfaceMesh& mesh, const ScalarField& field) {
    require_shape(mesh, field);
    const auto old_precision = os.precision(17);
    os << "n_t,n_theta,T,L,tag\n";
    os << mesh.n_t() << ',' << mesh.n_theta() << ',' << mesh.half_height() << ',' << mesh.period() << ','
       << to_string(mesh.tag()) << '\n';
    for (std::size_t i = 0; i < mesh.n_t(); ++i) {
        for (std::size_t j = 0; j < mesh.n_theta(); ++j) {
            if (j) {
                os << ',';
            }
            os << field(i, j);
        }
        os << '\n';
    }
    os.precision(old_precision);
}

std::pair<SurfaceMesh, ScalarField> read_grid_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("n_t,n_theta,T,L,tag", 0) != 0) {
        throw std::invalid_argument("grid csv: missing header line 'n_t,n_theta,T,L,tag'");
    }
    if (!std::getline(is, line)) {
        throw std::invalid_argument("grid csv: missing parameter line");
    }
    std::istringstream params(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(params, cell, ',')) {
        cells.push_back(cell);
    }
    if (cells.size() != 5) {
        throw std::invalid_argument("grid csv: parameter line needs 5 fields");
    }
    SurfaceMesh mesh(std::stoul(cells[0]), std::stoul(cells[1]), std::stod(cells[2]), std::stod(cells[3]),
                     metric_tag_from_string(cells[4]));
    ScalarField field = constant_field(mesh, 0.0);
    for (std::size_t i = 0; i < mesh.n_t(); ++i) {
        if (!std::getline(is, line)) {
            throw std::invalid_argument("grid csv: expected " + std::to_string(mesh.n_t()) + " rows, got " +
                                        std::to_string(i));
        }
        std::istringstream row(line);
        std::size_t j = 0;
        while (std::getline(row, cell, ',')) {
            if (j >= mesh.n_theta()) {
                throw std::invalid_argument("grid csv: row " + std::to_string(i) + " is too long");
            }
            field(i, j++) = std::stod(cell);
        }
        if (j != mesh.n_theta()) {
            throw std::invalid_argument("grid csv: row " + std::to_string(i) + " is too short");
        }
    }
    return {mesh, field};
}

}  // namespace hypvol
