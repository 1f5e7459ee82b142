#pragma once

// Reference periodic packings with known analytic densities, and clipping of
// scaled copies of them into axis-aligned boxes.

#include "polypack/packing.hpp"

#include <string>
#include <vector>

namespace polypack {

struct ReferencePacking {
    PeriodicPacking packing;
    double analytic_density = 0.0;  // density of the infinite periodic packing
    std::string name;
};

// Two disks of the given radius per 2r x 2*sqrt(3)r cell; density pi/sqrt(12).
ReferencePacking hex_disks(double radius);

// Four spheres per cubic cell of side 2*sqrt(2)r (face-centered motif);
// density pi/(3*sqrt(2)).
ReferencePacking fcc_spheres(double radius);

// One axis-aligned square tiling its own cell; density 1.
ReferencePacking square_tiling(double side);

// Labels: "hex", "fcc", "square". size is the radius or side above.
ReferencePacking reference_by_label(const std::string& label, double size);

// Largest body diameter in the reference (unscaled).
double reference_diameter(const ReferencePacking& ref);

// Copies of the reference packing scaled by `scale`, anchored at the box's
// low corner and replicated over the scaled lattice; keeps exactly the
// copies whose (closed) bodies lie inside the closed box. Returned
// translations are absolute; body_ref indexes the reference's body table.
// The result is deterministic, ordered by (lattice index, placement index),
// pairwise valid, and empty when the scaled diameter exceeds a box side.
std::vector<Placement> clip_to_box(const ReferencePacking& ref, const AxisBox& box, double scale);
std::vector<Placement> clip_to_cube(const ReferencePacking& ref, const Vec& corner, double side,
                                    double scale);

}  // namespace polypack
