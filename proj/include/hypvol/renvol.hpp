#pragma once

#include "hypvol/quadrature.hpp"
#include "hypvol/surface_topology.hpp"

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace hypvol {

/// Closed-form constants: `paper` reproduces the reference formulas verbatim, `derived` uses the
/// antiderivatives of the warped-product volume element (checked against quadrature).
enum class Convention { paper, derived };

std::string to_string(Convention c);

/// Distance lambda to the convex core, equivalently epsilon = e^{-lambda}.
class LevelParam {
public:
    static LevelParam from_lambda(double lambda);
    static LevelParam from_epsilon(double epsilon);

    double lambda() const { return lambda_; }
    double epsilon() const { return std::exp(-lambda_); }

private:
    explicit LevelParam(double lambda) : lambda_(lambda) {}
    double lambda_;
};

/// Distance to the convex core in an end chart: cosh f = cosh r cosh t.
double distance_function(double r, double t);

/// Area of the level set at distance lambda from the core.
double level_area(const SurfaceInfo& surface, double lambda);

struct VolumeParts {
    double core = 0.0;  // slab over the convex core
    double ends = 0.0;  // sum over the funnel ends
    double total() const { return core + ends; }
};

VolumeParts volume_closed_parts(const SurfaceInfo& surface, double epsilon, Convention convention);
double volume_closed(const SurfaceInfo& surface, double epsilon, Convention convention);

/// Truncated volume by adaptive quadrature of the volume element cosh^2 r cosh t.
VolumeParts volume_quadrature_parts(const SurfaceInfo& surface, double epsilon,
                                    const QuadratureOptions& options = {});
double volume_quadrature(const SurfaceInfo& surface, double epsilon, const QuadratureOptions& options = {});

/// Integral of the end volume element over {cosh r cosh t <= cosh lambda, t >= 0} per unit length.
IntegrationResult end_integral_quadrature(double lambda, const QuadratureOptions& options);
/// Integral of cosh^2 r over [0, lambda].
IntegrationResult slab_integral_quadrature(double lambda, const QuadratureOptions& options);

enum class Provenance { closed_form_paper, closed_form_derived, quadrature };

std::string to_string(Provenance p);

struct VolumeSample {
    double epsilon = 0.0;
    double volume = 0.0;
};

struct VolumeProfile {
    std::vector<VolumeSample> samples;  // epsilon strictly decreasing
    Provenance provenance = Provenance::quadrature;
    std::string group;
};

/// Logarithmically spaced epsilons, returned in decreasing order.
struct EpsilonGrid {
    double min = 1e-3;
    double max = 0.3;
    int count = 12;

    std::vector<double> values() const;
    EpsilonGrid scaled(double factor) const { return {min * factor, max * factor, count}; }
};

VolumeProfile profile_closed(const SurfaceInfo& surface, const EpsilonGrid& grid, Convention convention,
                             std::string group = {});
VolumeProfile profile_quadrature(const SurfaceInfo& surface, const EpsilonGrid& grid,
                                 const QuadratureOptions& options = {}, std::string group = {});

/// Coefficients of vol(eps) ~ c_m2 eps^-2 + c_log log eps + V + c_2 eps^2.
struct ExpansionFit {
    double c_m2 = 0.0;
    double c_log = 0.0;
    double V = 0.0;
    double c_2 = 0.0;
    double residual_norm = 0.0;
    /// Ratio of extreme singular values of the row-equilibrated, column-scaled design matrix.
    double condition = 0.0;
};

class FitError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

ExpansionFit expansion_fit(std::span<const VolumeSample> samples);
inline ExpansionFit expansion_fit(const VolumeProfile& profile) { return expansion_fit(profile.samples); }

/// Renormalized volume with respect to the distance to the convex core.
double renvol_fuchsian(const SurfaceInfo& surface, Convention convention);

}  // namespace hypvol
