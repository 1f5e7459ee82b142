#include "polypack/generators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace polypack {

ReferencePacking hex_disks(double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("hex_disks: radius must be positive");
    const double s3 = std::sqrt(3.0);
    ReferencePacking ref;
    ref.name = "hex";
    ref.analytic_density = std::numbers::pi / std::sqrt(12.0);
    PeriodicPacking pk = make_cell({2.0 * radius, 2.0 * s3 * radius});
    pk.bodies.push_back(make_ball(Vec{0.0, 0.0}, radius));
    pk.placements.push_back({0, {0.0, 0.0}, std::nullopt});
    pk.placements.push_back({0, {radius, s3 * radius}, std::nullopt});
    ref.packing = std::move(pk);
    return ref;
}

ReferencePacking fcc_spheres(double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("fcc_spheres: radius must be positive");
    const double a = 2.0 * std::sqrt(2.0) * radius;
    ReferencePacking ref;
    ref.name = "fcc";
    ref.analytic_density = std::numbers::pi / (3.0 * std::sqrt(2.0));
    PeriodicPacking pk = make_cell({a, a, a});
    pk.bodies.push_back(make_ball(Vec{0.0, 0.0, 0.0}, radius));
    const double h = 0.5 * a;
    pk.placements.push_back({0, {0.0, 0.0, 0.0}, std::nullopt});
    pk.placements.push_back({0, {h, h, 0.0}, std::nullopt});
    pk.placements.push_back({0, {h, 0.0, h}, std::nullopt});
    pk.placements.push_back({0, {0.0, h, h}, std::nullopt});
    ref.packing = std::move(pk);
    return ref;
}

ReferencePacking square_tiling(double side) {
    if (!(side > 0.0)) throw std::invalid_argument("square_tiling: side must be positive");
    ReferencePacking ref;
    ref.name = "square";
    ref.analytic_density = 1.0;
    PeriodicPacking pk = make_cell({side, side});
    pk.bodies.push_back(make_box(Vec{0.0, 0.0}, Vec{side, side}));
    pk.placements.push_back({0, {0.0, 0.0}, std::nullopt});
    ref.packing = std::move(pk);
    return ref;
}

ReferencePacking reference_by_label(const std::string& label, double size) {
    if (label == "hex") return hex_disks(size);
    if (label == "fcc") return fcc_spheres(size);
    if (label == "square") return square_tiling(size);
    throw std::invalid_argument("unknown generator label: " + label);
}

double reference_diameter(const ReferencePacking& ref) {
    double d = 0.0;
    for (const Body& b : ref.packing.bodies) d = std::max(d, diameter(b));
    return d;
}

std::vector<Placement> clip_to_box(const ReferencePacking& ref, const AxisBox& box, double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("clip_to_box: scale must be positive");
    int n = ref.packing.n;
    if (static_cast<int>(box.lo.size()) != n || static_cast<int>(box.hi.size()) != n)
        throw std::invalid_argument("clip_to_box: box dimension mismatch");
    // Exact-fit tolerance; small enough that any resulting cross-cube
    // protrusion stays under the overlap tolerance of validate.
    const double fit_tol = 1e-13;
    std::vector<AxisBox> body_bb;
    body_bb.reserve(ref.packing.bodies.size());
    for (const Body& b : ref.packing.bodies) body_bb.push_back(bounding_box(b));
    std::vector<int> lattice_max(n);
    for (int d = 0; d < n; ++d) {
        double ext = box.hi[d] - box.lo[d];
        if (ext < 0.0) throw std::invalid_argument("clip_to_box: empty box");
        double step = scale * ref.packing.periods[d];
        lattice_max[d] = static_cast<int>(std::ceil(ext / step)) + 1;
    }
    std::vector<Placement> out;
    std::vector<int> idx(n, -1);
    while (true) {
        for (std::size_t p = 0; p < ref.packing.placements.size(); ++p) {
            const Placement& pl = ref.packing.placements[p];
            const AxisBox& bb = body_bb[pl.body_ref];
            Vec pos(n);
            bool fits = true;
            for (int d = 0; d < n; ++d) {
                pos[d] = box.lo[d] +
                         scale * (pl.translation[d] + idx[d] * ref.packing.periods[d]);
                if (pos[d] + scale * bb.lo[d] < box.lo[d] - fit_tol ||
                    pos[d] + scale * bb.hi[d] > box.hi[d] + fit_tol) {
                    fits = false;
                    break;
                }
            }
            if (fits) out.push_back({pl.body_ref, std::move(pos), std::nullopt});
        }
        int d = n - 1;
        while (d >= 0 && idx[d] == lattice_max[d]) idx[d--] = -1;
        if (d < 0) break;
        ++idx[d];
    }
    return out;
}

std::vector<Placement> clip_to_cube(const ReferencePacking& ref, const Vec& corner, double side,
                                    double scale) {
    AxisBox box;
    box.lo = corner;
    box.hi = corner;
    for (double& v : box.hi) v += side;
    return clip_to_box(ref, box, scale);
}

}  // namespace polypack
