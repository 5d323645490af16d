#pragma once

#include "hypvol/mobius.hpp"
#include "hypvol/schottky.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hypvol {

/// Raised when the boundary cycles of the fundamental domain do not close up consistently.
class TopologyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Side { left, right };

struct ArcEndpoint {
    double position = 0.0;
    std::size_t circle = 0;
    Side side = Side::left;
};

/// Piece of the real line between two consecutive disks, oriented in the positive direction.
/// It starts at the right point of one disk and ends at the left point of the next one.
struct BoundaryArc {
    ArcEndpoint start;
    ArcEndpoint end;
    bool through_infinity = false;
};

struct CycleStep {
    std::size_t arc = 0;
    std::size_t pairing = 0;
    /// +1 if the pairing map was applied at the arc's terminal endpoint, -1 for its inverse.
    int exponent = 1;
};

struct EndCycle {
    std::vector<CycleStep> steps;
    /// Product of the applied maps, later steps on the left.
    Mobius holonomy;
    double length = 0.0;
};

struct SurfaceInfo {
    int ends = 0;
    int genus = 0;             // genus k of the quotient surface
    int handlebody_genus = 0;  // g, the number of generators
    std::vector<double> end_lengths;  // ascending
    double core_area = 0.0;

    double total_end_length() const;
};

/// The 2g arcs sorted by starting position; the last one passes through infinity.
std::vector<BoundaryArc> boundary_arcs(const ValidatedGroup& group);

/// Traces arcs through the side pairings; each cycle is one end of H^2 / group.
std::vector<EndCycle> end_cycles(const ValidatedGroup& group, double match_tol = 1e-8);

/// Ends, genus (g = 2k + e - 1), end lengths and the Gauss-Bonnet core area 2 pi (g - 1).
SurfaceInfo surface_invariants(const ValidatedGroup& group);

/// SurfaceInfo for a given handlebody genus and end lengths, with k derived from the Euler
/// characteristic. Throws TopologyError when 2k = g + 1 - e has no nonnegative solution.
SurfaceInfo make_surface_info(int handlebody_genus, std::vector<double> end_lengths);

}  // namespace hypvol
