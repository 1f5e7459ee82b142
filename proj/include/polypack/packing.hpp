#pragma once

// Box-periodic packings: placements of bodies in a fundamental cell
// [0,p_1) x ... x [0,p_n), overlap validation under the minimum-image
// convention, exact per-cell density, Monte Carlo density, and cell-anchored
// complement/carrier grids.

#include "polypack/geometry.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace polypack {

struct Placement {
    int body_ref = 0;
    Vec translation;  // componentwise in [0, p_i)
    // Row-major n x n orthogonal matrix. Absent means identity. Only balls
    // may carry a non-identity rotation (where it is a no-op); any other
    // kind with one is rejected by validate.
    std::optional<std::vector<double>> rotation;
};

struct PeriodicPacking {
    int n = 0;
    Vec periods;  // per-axis cell extents, all positive
    std::vector<Body> bodies;
    std::vector<Placement> placements;

    double cell_volume() const;
};

PeriodicPacking make_cell(Vec periods);  // empty packing over the given cell

// One overlapping pair of placement images. For ball pairs, separation is
// the center distance and required the radius sum; for box and sampled pairs
// separation/required are the penetration depth and zero, and witness holds
// a point interior to both bodies.
struct Violation {
    std::size_t first = 0;
    std::size_t second = 0;
    std::vector<int> image;  // offset of the second placement, in periods
    double separation = 0.0;
    double required = 0.0;
    Vec witness;
};

struct ValidationReport {
    std::vector<Violation> violations;
    // False when a generic body forced witness sampling; an empty violation
    // list is then probabilistic rather than proven.
    bool certified = true;
    bool ok() const { return violations.empty(); }
};

// Exact for ball and axis_box kinds: every unordered placement pair
// (including each placement against its own images) is tested against the
// periodic images that could geometrically overlap; the per-axis image
// radius grows with body extent, so bodies as large as the cell are handled
// exactly rather than rejected. Tangency within the squared-distance
// tolerance is allowed. Violations are sorted by (first, second, image).
ValidationReport validate(const PeriodicPacking& packing);

// Exact analytic ratio when every placed body has an analytic volume,
// otherwise a Jordan sandwich at jordan_level. Throws on invalid packings.
DensityInterval density(const PeriodicPacking& packing, int jordan_level = 8);

struct MonteCarloEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;
    std::size_t samples = 0;
};

// Covered fraction of uniform samples in the cell; deterministic for a given
// seed (platform-independent generator). Validity is not required.
MonteCarloEstimate density_monte_carlo(const PeriodicPacking& packing, std::size_t samples,
                                       std::uint64_t seed);

// Cell-anchored grid of level m: per axis, 2^m boxes of side p_i/2^m. The
// complement set holds every grid cube whose closed cube meets no placement
// image (touching the carrier excludes a cube); the carrier outer set is its
// exact complement within the cell; the carrier inner set holds cubes
// entirely inside a single placement image. Exact for ball/axis_box kinds.
CubeSet complement_grid(const PeriodicPacking& packing, int level);
CubeSet carrier_grid_outer(const PeriodicPacking& packing, int level);
CubeSet carrier_grid_inner(const PeriodicPacking& packing, int level);

// Concatenates placements onto a copy of base. Placement body_refs index
// base's body table; callers append any new bodies to the table first and
// re-validate the result themselves.
PeriodicPacking merge(const PeriodicPacking& base, const std::vector<Placement>& addition);

// Shifts every placement by t, wrapped back into the cell. Density and the
// validate verdict are invariant under this.
PeriodicPacking translated(const PeriodicPacking& packing, const Vec& t);

// Text format: "n <dim>", "periods <p...>", zero or more "body <record>"
// lines (see body_to_string), then one "place <body_ref> <t...>" per row.
// '#' starts a comment. Rotations are identity and omitted.
void write_packing(std::ostream& out, const PeriodicPacking& packing);
PeriodicPacking read_packing(std::istream& in);
PeriodicPacking read_packing_file(const std::string& path);
void write_packing_file(const std::string& path, const PeriodicPacking& packing);

void write_violations_csv(std::ostream& out, const std::vector<Violation>& violations);

}  // namespace polypack
