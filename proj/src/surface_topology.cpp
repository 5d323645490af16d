#include "hypvol/surface_topology.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace hypvol {

double SurfaceInfo::total_end_length() const {
    return std::accumulate(end_lengths.begin(), end_lengths.end(), 0.0);
}

namespace {

void require_fuchsian(const ValidatedGroup& group) {
    if (!group.fuchsian()) {
        throw DomainError("boundary arcs are only defined for Fuchsian groups");
    }
}

}  // namespace

std::vector<BoundaryArc> boundary_arcs(const ValidatedGroup& group) {
    require_fuchsian(group);
    const auto& circles = group.circles();
    std::vector<std::size_t> order(circles.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return circles[i].center.real() < circles[j].center.real();
    });

    std::vector<BoundaryArc> arcs;
    arcs.reserve(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        const std::size_t from = order[k];
        const std::size_t to = order[(k + 1) % order.size()];
        arcs.push_back({{circles[from].right(), from, Side::right},
                        {circles[to].left(), to, Side::left},
                        k + 1 == order.size()});
    }
    return arcs;
}

std::vector<EndCycle> end_cycles(const ValidatedGroup& group, double match_tol) {
    const std::vector<BoundaryArc> arcs = boundary_arcs(group);
    const auto find_arc_starting_at = [&](double x) -> std::size_t {
        for (std::size_t i = 0; i < arcs.size(); ++i) {
            const double p = arcs[i].start.position;
            if (std::abs(p - x) <= match_tol * std::max(1.0, std::abs(p))) {
                return i;
            }
        }
        std::ostringstream os;
        os.precision(17);
        os << "side pairing sends an arc endpoint to " << x
           << ", which is not the start of any boundary arc";
        throw TopologyError(os.str());
    };

    std::vector<bool> visited(arcs.size(), false);
    std::vector<EndCycle> cycles;
    for (std::size_t first = 0; first < arcs.size(); ++first) {
        if (visited[first]) {
            continue;
        }
        EndCycle cycle;
        cycle.holonomy = Mobius::identity(Field::real);
        std::size_t current = first;
        do {
            if (visited[current]) {
                throw TopologyError("arc " + std::to_string(current) + " is reached by two different cycles");
            }
            visited[current] = true;
            const ArcEndpoint& end = arcs[current].end;
            const std::size_t k = group.pairing_of(end.circle);
            const Pairing& pairing = group.pairings()[k];
            // The map that pushes the inside of this disk out past the partner circle.
            const int exponent = (pairing.source == end.circle) ? 1 : -1;
            const Mobius step = exponent > 0 ? pairing.map : pairing.map.inverse();
            const BoundaryPoint image = apply_boundary(step, BoundaryPoint(end.position));
            if (image.is_infinity()) {
                throw TopologyError("side pairing sends an arc endpoint to infinity");
            }
            cycle.steps.push_back({current, k, exponent});
            cycle.holonomy = compose(step, cycle.holonomy);
            current = find_arc_starting_at(image.real());
        } while (current != first);

        if (classify(cycle.holonomy) != IsometryClass::hyperbolic) {
            throw TopologyError("end holonomy is " + to_string(classify(cycle.holonomy)) +
                                ", expected hyperbolic");
        }
        cycle.length = translation_length(cycle.holonomy);
        cycles.push_back(std::move(cycle));
    }
    return cycles;
}

SurfaceInfo make_surface_info(int handlebody_genus, std::vector<double> end_lengths) {
    const int e = static_cast<int>(end_lengths.size());
    const int twice_k = handlebody_genus + 1 - e;
    if (e < 1 || twice_k < 0 || twice_k % 2 != 0) {
        throw TopologyError("g = " + std::to_string(handlebody_genus) + " with " + std::to_string(e) +
                            " ends admits no surface genus k with g = 2k + e - 1");
    }
    std::sort(end_lengths.begin(), end_lengths.end());
    SurfaceInfo info;
    info.ends = e;
    info.genus = twice_k / 2;
    info.handlebody_genus = handlebody_genus;
    info.end_lengths = std::move(end_lengths);
    info.core_area = 2.0 * std::numbers::pi * (handlebody_genus - 1);
    return info;
}

SurfaceInfo surface_invariants(const ValidatedGroup& group) {
    std::vector<double> lengths;
    for (const EndCycle& c : end_cycles(group)) {
        lengths.push_back(c.length);
    }
    return make_surface_info(static_cast<int>(group.genus()), std::move(lengths));
}

}  // namespace hypvol
