// Emits the recorded oracle values under data/calibration/. Test thresholds
// are frozen from these files; rerun after intentional algorithm changes and
// review the diffs before updating any frozen literal.

#include "polypack/generators.hpp"
#include "polypack/geometry.hpp"
#include "polypack/hierarchy.hpp"
#include "polypack/packing.hpp"

#include <fstream>
#include <iostream>
#include <numbers>
#include <string>

using namespace polypack;

namespace {

std::ofstream open_out(const std::string& dir, const std::string& name) {
    std::ofstream out(dir + "/" + name, std::ios::binary);
    if (!out) {
        std::cerr << "cannot write " << dir << "/" << name << "\n";
        std::exit(2);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    std::string dir = argc > 1 ? argv[1] : "data/calibration";

    {
        Body disk = make_ball({0.0, 0.0}, 1.0);
        auto out = open_out(dir, "disk_grid.csv");
        out << "k,inner_count,inner_volume,outer_count,outer_volume,width\n";
        for (int k = 0; k <= 10; ++k) {
            CubeSet inner = grid_inner(disk, k);
            CubeSet outer = grid_outer(disk, k);
            out << k << ',' << inner.count() << ',' << format_double(inner.volume()) << ','
                << outer.count() << ',' << format_double(outer.volume()) << ','
                << format_double(outer.volume() - inner.volume()) << "\n";
        }
    }

    {
        ReferencePacking hex = hex_disks(1.0);
        auto out = open_out(dir, "hex_complement.csv");
        out << "m,complement_cubes,complement_fraction\n";
        for (int m = 4; m <= 7; ++m) {
            CubeSet comp = complement_grid(hex.packing, m);
            out << m << ',' << comp.count() << ','
                << format_double(comp.volume() / hex.packing.cell_volume()) << "\n";
        }
    }

    {
        ReferencePacking hex = hex_disks(1.0);
        auto out = open_out(dir, "hex_clip_unit_cube.csv");
        out << "radius,count,in_cube_density\n";
        for (double r : {0.125, 0.0625, 0.03125, 0.015625}) {
            std::vector<Placement> placed = clip_to_cube(hex, {0.0, 0.0}, 1.0, r);
            double vol = static_cast<double>(placed.size()) * std::numbers::pi * r * r;
            out << format_double(r) << ',' << placed.size() << ',' << format_double(vol) << "\n";
        }
    }

    {
        ReferencePacking hex = hex_disks(1.0);
        std::vector<ConvergenceRow> rows = convergence_experiment(
            hex.packing, hex, {0.125, 0.0625, 0.03125, 0.015625}, {3, 4, 5, 6});
        auto out = open_out(dir, "hex_converge.csv");
        write_convergence_csv(out, rows);
    }

    {
        PeriodicPacking base = make_cell({1.0, 1.0});
        std::vector<FillPlan> plans;
        plans.push_back({0, 0.25, "hex", std::nullopt});
        plans.push_back({5, 1.0 / 256.0, "hex", std::nullopt});
        std::vector<LevelResult> levels = iterate_fill(base, plans);
        auto out = open_out(dir, "iterate_two_level.csv");
        write_levels_csv(out, levels);
    }

    {
        ReferencePacking hex = hex_disks(1.0);
        FillPlan plan{6, 0.015625, "hex", std::nullopt};
        FillResult fr = fill_interstices(hex.packing, plan);
        auto out = open_out(dir, "fill_hex_m6.csv");
        out << "base_density,achieved,complement_fraction,min_cube_density,placements\n";
        out << format_double(fr.base_density) << ',' << format_double(fr.achieved_density) << ','
            << format_double(fr.complement_fraction) << ','
            << format_double(fr.min_cube_density) << ',' << fr.packing.placements.size() << "\n";
    }

    std::cout << "calibration written to " << dir << "\n";
    return 0;
}
