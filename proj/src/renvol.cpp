#include "hypvol/renvol.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hypvol {

namespace {

constexpr double kPi = std::numbers::pi;

void require_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw DomainError("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
    }
}

void require_tolerance(const QuadratureOptions& options) {
    if (!(options.tol >= 1e-10 && options.tol < 1.0)) {
        throw DomainError("quadrature tolerance must lie in [1e-10, 1), got " + std::to_string(options.tol));
    }
}

/// Sum of pi * L_i, accumulated in end order.
double pi_length_sum(const SurfaceInfo& surface) {
    double sum = 0.0;
    for (double length : surface.end_lengths) {
        sum += kPi * length;
    }
    return sum;
}

}  // namespace

std::string to_string(Convention c) {
    return c == Convention::paper ? "paper" : "derived";
}

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::closed_form_paper: return "closed_form_paper";
        case Provenance::closed_form_derived: return "closed_form_derived";
        case Provenance::quadrature: return "quadrature";
    }
    return "unknown";
}

LevelParam LevelParam::from_lambda(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw DomainError("lambda must be positive and finite");
    }
    return LevelParam(lambda);
}

LevelParam LevelParam::from_epsilon(double epsilon) {
    require_epsilon(epsilon);
    return LevelParam(-std::log(epsilon));
}

double distance_function(double r, double t) {
    return std::acosh(std::cosh(r) * std::cosh(t));
}

double level_area(const SurfaceInfo& surface, double lambda) {
    if (!(lambda > 0.0)) {
        throw DomainError("level_area needs lambda > 0");
    }
    const double c = std::cosh(lambda);
    const double s = std::sinh(lambda);
    // Two copies of the core scaled by cosh^2, plus one flat cylinder of height pi sinh per end.
    return 2.0 * surface.core_area * c * c + pi_length_sum(surface) * s * c;
}

VolumeParts volume_closed_parts(const SurfaceInfo& surface, double epsilon, Convention convention) {
    require_epsilon(epsilon);
    const double g = surface.handlebody_genus;
    VolumeParts parts;
    if (convention == Convention::paper) {
        const double e2 = epsilon * epsilon;
        parts.core = kPi * (g - 1.0) / 4.0 * (1.0 / e2 + std::log(epsilon) / 2.0 - e2);
        parts.ends = kPi / 4.0 * (1.0 / e2 - 2.0 + e2) * surface.total_end_length();
    } else {
        const double lambda = -std::log(epsilon);
        const double s = std::sinh(lambda);
        parts.core = 2.0 * surface.core_area * (lambda / 2.0 + std::sinh(2.0 * lambda) / 4.0);
        parts.ends = kPi / 2.0 * s * s * surface.total_end_length();
    }
    return parts;
}

double volume_closed(const SurfaceInfo& surface, double epsilon, Convention convention) {
    return volume_closed_parts(surface, epsilon, convention).total();
}

IntegrationResult slab_integral_quadrature(double lambda, const QuadratureOptions& options) {
    const auto cosh2 = [](double r) {
        const double c = std::cosh(r);
        return c * c;
    };
    return integrate_cells(cosh2, 0.0, lambda, options);
}

IntegrationResult end_integral_quadrature(double lambda, const QuadratureOptions& options) {
    // t = lambda (1 - u^2) removes the square-root edge of the region at t = lambda.
    const double inner_tol = std::max(1e-14, options.tol * 1e-2);
    const auto cosh2 = [](double r) {
        const double c = std::cosh(r);
        return c * c;
    };
    const auto integrand = [&](double u) {
        if (u <= 0.0) {
            return 0.0;
        }
        const double gap = lambda * u * u;  // lambda - t
        const double t = lambda - gap;
        // cosh R - 1 = (cosh lambda - cosh t) / cosh t, written without cancellation.
        const double x = 2.0 * std::sinh(0.5 * (lambda + t)) * std::sinh(0.5 * gap) / std::cosh(t);
        const double half_width = std::log1p(x + std::sqrt(x * (x + 2.0)));
        const double inner =
            2.0 * integrate_adaptive(cosh2, 0.0, half_width, inner_tol, 0.0, options.max_subdivisions).value;
        return 2.0 * lambda * u * std::cosh(t) * inner;
    };
    return integrate_cells(integrand, 0.0, 1.0, options);
}

VolumeParts volume_quadrature_parts(const SurfaceInfo& surface, double epsilon, const QuadratureOptions& options) {
    require_epsilon(epsilon);
    require_tolerance(options);
    const double lambda = -std::log(epsilon);
    VolumeParts parts;
    if (surface.core_area != 0.0) {
        parts.core = 2.0 * surface.core_area * slab_integral_quadrature(lambda, options).value;
    }
    const double total_length = surface.total_end_length();
    if (total_length != 0.0) {
        parts.ends = total_length * end_integral_quadrature(lambda, options).value;
    }
    return parts;
}

double volume_quadrature(const SurfaceInfo& surface, double epsilon, const QuadratureOptions& options) {
    return volume_quadrature_parts(surface, epsilon, options).total();
}

std::vector<double> EpsilonGrid::values() const {
    if (!(min > 0.0 && max < 1.0 && min < max) || count < 2) {
        throw DomainError("epsilon grid needs 0 < min < max < 1 and at least two points");
    }
    std::vector<double> eps(static_cast<std::size_t>(count));
    const double ratio = std::log(min / max);
    for (int k = 0; k < count; ++k) {
        eps[static_cast<std::size_t>(k)] = max * std::exp(ratio * k / (count - 1));
    }
    eps.front() = max;
    eps.back() = min;
    return eps;
}

VolumeProfile profile_closed(const SurfaceInfo& surface, const EpsilonGrid& grid, Convention convention,
                             std::string group) {
    VolumeProfile profile;
    profile.provenance =
        convention == Convention::paper ? Provenance::closed_form_paper : Provenance::closed_form_derived;
    profile.group = std::move(group);
    for (double eps : grid.values()) {
        profile.samples.push_back({eps, volume_closed(surface, eps, convention)});
    }
    return profile;
}

VolumeProfile profile_quadrature(const SurfaceInfo& surface, const EpsilonGrid& grid,
                                 const QuadratureOptions& options, std::string group) {
    VolumeProfile profile;
    profile.provenance = Provenance::quadrature;
    profile.group = std::move(group);
    for (double eps : grid.values()) {
        profile.samples.push_back({eps, volume_quadrature(surface, eps, options)});
    }
    return profile;
}

ExpansionFit expansion_fit(std::span<const VolumeSample> samples) {
    constexpr Eigen::Index kTerms = 4;
    if (samples.size() < 8) {
        throw FitError("expansion fit needs at least 8 samples, got " + std::to_string(samples.size()));
    }
    const auto n = static_cast<Eigen::Index>(samples.size());
    Eigen::MatrixXd design(n, kTerms);
    Eigen::VectorXd rhs(n);
    double eps_min = 1.0, eps_max = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double eps = samples[static_cast<std::size_t>(i)].epsilon;
        if (!(eps > 0.0 && eps < 1.0)) {
            throw FitError("expansion fit samples need epsilon in (0, 1)");
        }
        eps_min = std::min(eps_min, eps);
        eps_max = std::max(eps_max, eps);
        design(i, 0) = 1.0 / (eps * eps);
        design(i, 1) = std::log(eps);
        design(i, 2) = 1.0;
        design(i, 3) = eps * eps;
        rhs(i) = samples[static_cast<std::size_t>(i)].volume;
    }

    // Rows are equilibrated first: sample rounding is relative, so unweighted rows at small epsilon
    // would drown the eps^2 column.
    const Eigen::VectorXd row_weight = design.cwiseAbs().rowwise().maxCoeff().cwiseInverse();
    const Eigen::MatrixXd weighted = row_weight.asDiagonal() * design;
    const Eigen::VectorXd scale = weighted.cwiseAbs().colwise().maxCoeff().transpose();
    const Eigen::MatrixXd scaled = weighted * scale.cwiseInverse().asDiagonal();
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sigma = svd.singularValues();
    if (!(sigma(kTerms - 1) > 1e-13 * sigma(0))) {
        throw FitError("expansion fit design is rank deficient (repeated epsilons?)");
    }
    if (eps_max < 100.0 * eps_min) {
        throw FitError("expansion fit samples must span at least two decades of epsilon");
    }
    const Eigen::VectorXd coeff = svd.solve(row_weight.asDiagonal() * rhs).cwiseQuotient(scale);

    ExpansionFit fit;
    fit.c_m2 = coeff(0);
    fit.c_log = coeff(1);
    fit.V = coeff(2);
    fit.c_2 = coeff(3);
    fit.residual_norm = (design * coeff - rhs).norm();
    fit.condition = sigma(0) / sigma(kTerms - 1);
    return fit;
}

double renvol_fuchsian(const SurfaceInfo& surface, Convention convention) {
    const double weight = convention == Convention::paper ? 0.5 : 0.25;
    return -(weight * pi_length_sum(surface));
}

}  // namespace hypvol
