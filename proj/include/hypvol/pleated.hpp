#pragma once

#include "hypvol/renvol.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hypvol {

/// Closed leaf of the bending lamination. `angle` is the interior dihedral angle between the two
/// bending planes: pi means flat, 0 is the doubled-surface limit of a Fuchsian end.
struct PleatLeaf {
    double length = 0.0;
    double angle = 0.0;

    double deficit() const;  // pi - angle
};

struct PleatedCoreData {
    double core_volume = 0.0;
    int genus = 2;
    /// Area of the convex core boundary; defaults to 4 pi (genus - 1), i.e. -2 pi chi of a closed
    /// genus-g surface.
    std::optional<double> boundary_area;
    std::vector<PleatLeaf> leaves;

    double area() const;
    /// Throws DomainError on a negative volume, bad genus or out-of-range leaf.
    void check() const;
};

/// Volume of the region over the totally geodesic part of the boundary: A * int_0^lambda cosh^2.
double slab_volume(double area, double epsilon);

double wedge_volume_closed(const PleatLeaf& leaf, double epsilon, Convention convention);

/// Volume of the wedge region in the upper half-space model over one period of the leaf by
/// iterated adaptive quadrature of dx dy dz / z^3.
double wedge_volume_quadrature(const PleatLeaf& leaf, double epsilon, const QuadratureOptions& options = {});

/// Full truncated volume Vol(C) + slab + wedges under a convention's closed forms.
double pleated_volume_closed(const PleatedCoreData& core, double epsilon, Convention convention);
/// Same decomposition with every piece computed by quadrature.
double pleated_volume_quadrature(const PleatedCoreData& core, double epsilon, const QuadratureOptions& options = {});

struct PleatedResult {
    double V = 0.0;
    VolumeProfile profile;
};

PleatedResult renvol_pleated(const PleatedCoreData& core, Convention convention, const EpsilonGrid& grid = {});

struct ReductionReport {
    bool passed = false;
    Convention convention = Convention::derived;
    double fuchsian = 0.0;
    double pleated = 0.0;
    std::string message;
};

/// Feeds a Fuchsian surface through the pleated formula (zero core volume, leaves with angle 0 and
/// the end lengths, doubled core as boundary) and compares with renvol_fuchsian exactly.
ReductionReport fuchsian_reduction_check(const SurfaceInfo& surface, Convention convention);

PleatedCoreData fuchsian_degeneration(const SurfaceInfo& surface);

}  // namespace hypvol
