#include "hypvol/pleated.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace hypvol {

namespace {

constexpr double kPi = std::numbers::pi;

void require_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw DomainError("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
    }
}

void require_leaf(const PleatLeaf& leaf) {
    if (!(leaf.length > 0.0) || !std::isfinite(leaf.length)) {
        throw DomainError("pleat leaf length must be positive");
    }
    if (!(leaf.angle >= 0.0 && leaf.angle <= kPi)) {
        throw DomainError("pleat leaf angle must lie in [0, pi]");
    }
}

double deficit_length_sum(const PleatedCoreData& core) {
    double sum = 0.0;
    for (const PleatLeaf& leaf : core.leaves) {
        sum += leaf.deficit() * leaf.length;
    }
    return sum;
}

}  // namespace

double PleatLeaf::deficit() const {
    return kPi - angle;
}

double PleatedCoreData::area() const {
    return boundary_area.value_or(4.0 * kPi * (genus - 1));
}

void PleatedCoreData::check() const {
    if (!(core_volume >= 0.0) || !std::isfinite(core_volume)) {
        throw DomainError("core volume must be nonnegative");
    }
    if (genus < 1) {
        throw DomainError("boundary genus must be at least 1");
    }
    if (!(area() >= 0.0)) {
        throw DomainError("boundary area must be nonnegative");
    }
    for (const PleatLeaf& leaf : leaves) {
        require_leaf(leaf);
    }
}

double slab_volume(double area, double epsilon) {
    require_epsilon(epsilon);
    if (!(area >= 0.0)) {
        throw DomainError("slab area must be nonnegative");
    }
    const double lambda = -std::log(epsilon);
    return area * (lambda / 2.0 + std::sinh(2.0 * lambda) / 4.0);
}

double wedge_volume_closed(const PleatLeaf& leaf, double epsilon, Convention convention) {
    require_epsilon(epsilon);
    require_leaf(leaf);
    const double weight = leaf.deficit() * leaf.length;
    if (convention == Convention::paper) {
        // Printed with a first power of epsilon.
        return weight / 4.0 * (epsilon + 1.0 / (epsilon * epsilon)) - weight / 2.0;
    }
    const double s = std::sinh(-std::log(epsilon));
    return weight * s * s / 2.0;
}

double wedge_volume_quadrature(const PleatLeaf& leaf, double epsilon, const QuadratureOptions& options) {
    require_epsilon(epsilon);
    require_leaf(leaf);
    if (!(options.tol >= 1e-8 && options.tol < 1.0)) {
        throw DomainError("wedge quadrature tolerance must lie in [1e-8, 1)");
    }
    if (leaf.deficit() <= 0.0) {
        return 0.0;  // the sector has zero opening angle
    }
    const double sinh_lambda = std::sinh(-std::log(epsilon));
    // Cross-sections are sectors between the rays at -pi/2 and upper = pi/2 - angle,
    // truncated at radius z sinh(lambda).
    const double upper = kPi / 2.0 - leaf.angle;
    const double slope = std::tan(upper);
    const double cos_upper = std::cos(upper);
    const double inner_tol = std::max(1e-14, options.tol * 1e-2);
    const std::size_t budget = options.max_subdivisions;

    const auto slice = [&](double z) {
        const double radius = z * sinh_lambda;
        const double density = 1.0 / (z * z * z);
        const auto column = [&](double lo, double hi) {
            if (!(hi > lo)) {
                return 0.0;
            }
            return integrate_adaptive([density](double) { return density; }, lo, hi, inner_tol, 0.0, budget).value;
        };
        const auto circle = [radius](double x) { return std::sqrt(std::max(0.0, radius * radius - x * x)); };

        // x in [0, knee]: y runs from the lower circle to the upper ray; knee is where they meet.
        const double knee = radius * cos_upper;
        double total = 0.0;
        if (knee > 0.0) {
            const auto below_ray = [&](double s) {
                const double x = knee * (1.0 - s * s);
                return 2.0 * knee * s * column(-circle(x), std::min(slope * x, circle(x)));
            };
            total += integrate_adaptive(below_ray, 0.0, 1.0, inner_tol, 0.0, budget).value;
        }
        // x in [knee, radius]: full chord, present only when the upper ray is above the x axis.
        if (upper > 0.0 && knee < radius) {
            const double span = radius - knee;
            const auto full_chord = [&](double s) {
                const double x = radius - span * s * s;
                return 2.0 * span * s * column(-circle(x), circle(x));
            };
            total += integrate_adaptive(full_chord, 0.0, 1.0, inner_tol, 0.0, budget).value;
        }
        return total;
    };

    return integrate_cells(slice, 1.0, std::exp(leaf.length), options).value;
}

double pleated_volume_closed(const PleatedCoreData& core, double epsilon, Convention convention) {
    core.check();
    require_epsilon(epsilon);
    double volume = core.core_volume;
    if (convention == Convention::paper) {
        const double e2 = epsilon * epsilon;
        volume += kPi * (core.genus - 1.0) / 4.0 * (1.0 / e2 + std::log(epsilon) / 2.0 - e2);
    } else {
        volume += slab_volume(core.area(), epsilon);
    }
    for (const PleatLeaf& leaf : core.leaves) {
        volume += wedge_volume_closed(leaf, epsilon, convention);
    }
    return volume;
}

double pleated_volume_quadrature(const PleatedCoreData& core, double epsilon, const QuadratureOptions& options) {
    core.check();
    require_epsilon(epsilon);
    double volume = core.core_volume;
    if (core.area() != 0.0) {
        volume += core.area() * slab_integral_quadrature(-std::log(epsilon), options).value;
    }
    for (const PleatLeaf& leaf : core.leaves) {
        volume += wedge_volume_quadrature(leaf, epsilon, options);
    }
    return volume;
}

PleatedResult renvol_pleated(const PleatedCoreData& core, Convention convention, const EpsilonGrid& grid) {
    core.check();
    const double weight = convention == Convention::paper ? 0.5 : 0.25;
    PleatedResult result;
    result.V = core.core_volume - weight * deficit_length_sum(core);
    result.profile.provenance =
        convention == Convention::paper ? Provenance::closed_form_paper : Provenance::closed_form_derived;
    result.profile.group = "pleated";
    for (double eps : grid.values()) {
        result.profile.samples.push_back({eps, pleated_volume_closed(core, eps, convention)});
    }
    return result;
}

PleatedCoreData fuchsian_degeneration(const SurfaceInfo& surface) {
    PleatedCoreData core;
    core.core_volume = 0.0;
    core.genus = std::max(1, surface.handlebody_genus);
    core.boundary_area = 2.0 * surface.core_area;
    for (double length : surface.end_lengths) {
        core.leaves.push_back({length, 0.0});
    }
    return core;
}

ReductionReport fuchsian_reduction_check(const SurfaceInfo& surface, Convention convention) {
    ReductionReport report;
    report.convention = convention;
    report.fuchsian = renvol_fuchsian(surface, convention);
    report.pleated = renvol_pleated(fuchsian_degeneration(surface), convention).V;
    report.passed = report.fuchsian == report.pleated;
    std::ostringstream os;
    os.precision(17);
    os << (report.passed ? "match" : "mismatch") << " under " << to_string(convention)
       << " convention: fuchsian " << report.fuchsian << ", pleated " << report.pleated;
    report.message = os.str();
    return report;
}

}  // namespace hypvol
