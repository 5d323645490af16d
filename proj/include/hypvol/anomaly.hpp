#pragma once

#include "hypvol/mobius.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace hypvol {

enum class MetricTag { hyperbolic_cylinder, flat_cylinder };

std::string to_string(MetricTag tag);
MetricTag metric_tag_from_string(const std::string& name);

/// Node grid on [-T, T] x [0, L) with theta periodic, carrying either dt^2 + cosh^2 t dtheta^2
/// or dt^2 + dtheta^2. Node weights are trapezoidal in t and uniform in theta.
class SurfaceMesh {
public:
    SurfaceMesh(std::size_t n_t, std::size_t n_theta, double half_height, double period, MetricTag tag);

    std::size_t n_t() const { return n_t_; }
    std::size_t n_theta() const { return n_theta_; }
    std::size_t size() const { return n_t_ * n_theta_; }
    double half_height() const { return half_height_; }
    double period() const { return period_; }
    MetricTag tag() const { return tag_; }

    double dt() const { return dt_; }
    double dtheta() const { return dtheta_; }
    double t(std::size_t i) const { return -half_height_ + dt_ * static_cast<double>(i); }
    double theta(std::size_t j) const { return dtheta_ * static_cast<double>(j); }
    std::size_t index(std::size_t i, std::size_t j) const { return i * n_theta_ + j; }

    /// sqrt(det g) at height t.
    double volume_factor(double t) const;
    /// g_theta_theta at height t.
    double angular_metric(double t) const;
    /// Area weight of every node in row i.
    double weight(std::size_t i) const { return weights_[i]; }
    double area() const { return area_; }
    /// Scalar curvature (twice the Gauss curvature): -2 or 0.
    double scalar_curvature() const;
    /// Exact area of the continuum cylinder.
    double analytic_area() const;

private:
    std::size_t n_t_, n_theta_;
    double half_height_, period_;
    MetricTag tag_;
    double dt_, dtheta_;
    std::vector<double> weights_;
    double area_ = 0.0;
};

/// Row-major nodal values (row = t index).
struct ScalarField {
    std::size_t n_t = 0;
    std::size_t n_theta = 0;
    std::vector<double> values;

    double& operator()(std::size_t i, std::size_t j) { return values[i * n_theta + j]; }
    double operator()(std::size_t i, std::size_t j) const { return values[i * n_theta + j]; }
};

ScalarField constant_field(const SurfaceMesh& mesh, double value);
ScalarField sample_field(const SurfaceMesh& mesh, const std::function<double(double t, double theta)>& f);

/// Smooth pseudo-random field: a seeded sum of `modes` x `modes` Fourier terms, cosines in t and
/// periodic in theta, with coefficients decaying like 1/(1 + m + n)^2 and sup norm <= amplitude.
/// The same seed gives the same field on every platform.
ScalarField random_smooth_field(const SurfaceMesh& mesh, int modes, double amplitude, std::uint64_t seed);

/// Integral against the node weights.
double integrate(const SurfaceMesh& mesh, const ScalarField& u);

/// Discrete int <grad u, grad v> from differences along mesh edges, each t-edge weighted by the
/// volume factor at its midpoint.
double dirichlet_pairing(const SurfaceMesh& mesh, const ScalarField& u, const ScalarField& v);
double gradient_energy(const SurfaceMesh& mesh, const ScalarField& u);

/// Laplace-Beltrami operator dual to dirichlet_pairing. Boundary rows are half cells whose outer flux
/// uses a second order one-sided normal derivative, so that
///   integrate(u * laplacian(v)) + dirichlet_pairing(u, v) == boundary_flux(u, v)
/// holds to rounding.
ScalarField laplacian(const SurfaceMesh& mesh, const ScalarField& v);
double boundary_flux(const SurfaceMesh& mesh, const ScalarField& u, const ScalarField& v);

/// 1/4 (int |grad u|^2 + int R u): the change in renormalized volume under h -> e^{2u} h is minus this.
double conformal_change_term(const SurfaceMesh& mesh, const ScalarField& u);

/// E(u) = int |grad u|^2 - 2 int u; hyperbolic meshes only.
double jensen_energy(const SurfaceMesh& mesh, const ScalarField& u);

/// u + c with int e^{2(u + c)} = area.
ScalarField normalize_area(const SurfaceMesh& mesh, const ScalarField& u);

enum class LiouvillePiece { hyperbolic_piece, flat_piece };

std::string to_string(LiouvillePiece piece);

/// Nodewise lap(phi) + 1 - e^{2 phi} (hyperbolic piece) or lap(phi) - e^{2 phi} (flat piece).
ScalarField liouville_residual(const SurfaceMesh& mesh, const ScalarField& phi, LiouvillePiece piece);

/// Grid CSV: a header line `n_t,n_theta,T,L,tag`, one line with those values, then n_t rows of
/// n_theta comma-separated values.
void write_grid_csv(std::ostream& os, const SurfaceMesh& mesh, const ScalarField& field);
std::pair<SurfaceMesh, ScalarField> read_grid_csv(std::istream& is);

}  // namespace hypvol
