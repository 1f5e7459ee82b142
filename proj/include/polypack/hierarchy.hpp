#pragma once

// Multi-scale construction: fill the grid complement of a packing with
// scaled reference packings, iterate over shrinking scales, and compare
// achieved densities against the theoretical limit a + (1-a)b.

#include "polypack/generators.hpp"
#include "polypack/packing.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace polypack {

// a + (1-a)b, the density reached when a fraction b of the leftover space
// (1-a) is also covered. Symmetric in its arguments.
double limit_density(double delta_base, double delta_small);

// 1 - prod(1 - delta_i); the left fold of limit_density over the list.
double iterate_limit(const std::vector<double>& deltas);

struct FillPlan {
    int m = 0;             // complement grid level: per axis 2^m boxes of side p_i/2^m
    double scale = 1.0;    // applied to the unit-size reference packing
    std::string reference; // generator label ("hex", "fcc", "square")
    std::optional<double> expected_floor;  // density the filled packing must reach
};

struct FillResult {
    PeriodicPacking packing;
    bool vacuous = false;  // nothing fits a complement cube; packing == base
    std::size_t complement_cubes = 0;
    std::size_t filled_cubes = 0;  // complement cubes that received placements
    std::size_t added_placements = 0;
    double complement_fraction = 0.0;  // complement volume / cell volume
    double min_cube_density = 0.0;     // least in-cube density over complement cubes
    double base_density = 0.0;
    double achieved_density = 0.0;
};

// Clips the scaled reference into every complement cube of base at plan.m
// and merges the copies. The output validates; the density gain is at least
// complement_fraction * min_cube_density (both measured from the run).
FillResult fill_interstices(const PeriodicPacking& base, const FillPlan& plan);

struct LevelResult {
    PeriodicPacking packing;
    double density = 0.0;
    // Fraction of the space left before this level that the level covered;
    // folding these through iterate_limit reproduces density exactly.
    double efficiency = 0.0;
    bool vacuous = false;
};

// Applies the plans in sequence, each filling the previous output. Densities
// never decrease. An empty plan list yields the base alone.
std::vector<LevelResult> iterate_fill(const PeriodicPacking& base,
                                      const std::vector<FillPlan>& plans);

struct ConvergenceRow {
    double scale = 0.0;
    int m = 0;
    double achieved = 0.0;  // analytic density of the filled packing
    double limit = 0.0;     // limit_density(base density, reference density)
    double gap = 0.0;       // limit - achieved
};

// One fresh fill of base per scale, at the paired grid level. Scales must be
// strictly decreasing. The gap may not grow by more than gap_step_tol per
// row and never drops below -1e-9.
std::vector<ConvergenceRow> convergence_experiment(const PeriodicPacking& base,
                                                   const ReferencePacking& reference,
                                                   const std::vector<double>& scales,
                                                   const std::vector<int>& m_schedule,
                                                   double gap_step_tol = 0.005);

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows);
void write_levels_csv(std::ostream& out, const std::vector<LevelResult>& levels);

}  // namespace polypack
