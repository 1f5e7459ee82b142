#include "polypack/hierarchy.hpp"

#include "polypack/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace polypack {

double limit_density(double delta_base, double delta_small) {
    if (!(delta_base >= 0.0 && delta_base <= 1.0) || !(delta_small >= 0.0 && delta_small <= 1.0))
        throw std::invalid_argument("limit_density: inputs must lie in [0,1]");
    return delta_base + (1.0 - delta_base) * delta_small;
}

double iterate_limit(const std::vector<double>& deltas) {
    if (deltas.empty()) throw std::invalid_argument("iterate_limit: empty list");
    double leftover = 1.0;
    for (double d : deltas) {
        if (!(d >= 0.0 && d <= 1.0))
            throw std::invalid_argument("iterate_limit: inputs must lie in [0,1]");
        leftover *= 1.0 - d;
    }
    return 1.0 - leftover;
}

FillResult fill_interstices(const PeriodicPacking& base, const FillPlan& plan) {
    if (!(plan.scale > 0.0)) throw std::invalid_argument("fill: scale must be positive");
    ValidationReport base_report = validate(base);
    if (!base_report.ok())
        throw std::invalid_argument("fill: base packing has overlapping placements");
    ReferencePacking ref = reference_by_label(plan.reference, 1.0);
    if (ref.packing.n != base.n) throw std::invalid_argument("fill: reference dimension mismatch");

    FillResult result;
    result.packing = base;
    DensityInterval base_dens = density(base);
    result.base_density = base_dens.lower;
    result.achieved_density = result.base_density;

    double min_side = base.periods[0];
    for (double p : base.periods) min_side = std::min(min_side, p);
    min_side /= static_cast<double>(std::int64_t{1} << plan.m);
    double scaled_diam = plan.scale * reference_diameter(ref);
    if (scaled_diam > min_side) {
        result.vacuous = true;
        CubeSet comp = complement_grid(base, plan.m);
        result.complement_cubes = comp.count();
        result.complement_fraction = comp.volume() / base.cell_volume();
        return result;
    }

    CubeSet comp = complement_grid(base, plan.m);
    result.complement_cubes = comp.count();
    result.complement_fraction = comp.volume() / base.cell_volume();

    int ref_base = static_cast<int>(result.packing.bodies.size());
    std::vector<double> body_volume(ref.packing.bodies.size());
    for (std::size_t b = 0; b < ref.packing.bodies.size(); ++b) {
        Body sb = scaled(ref.packing.bodies[b], plan.scale);
        if (!sb.analytic_volume)
            throw std::invalid_argument("fill: reference bodies need analytic volumes");
        body_volume[b] = *sb.analytic_volume;
        result.packing.bodies.push_back(std::move(sb));
    }

    std::size_t cubes = comp.count();
    std::vector<std::vector<Placement>> per_cube(cubes);
    parallel_for(cubes, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            AxisBox box = comp.bounds(i);
            per_cube[i] = clip_to_box(ref, box, plan.scale);
        }
    });

    double cube_vol = comp.cube_volume();
    double min_cube_density = cubes > 0 ? std::numeric_limits<double>::infinity() : 0.0;
    for (std::size_t i = 0; i < cubes; ++i) {
        double vol = 0.0;
        for (const Placement& pl : per_cube[i]) vol += body_volume[pl.body_ref];
        min_cube_density = std::min(min_cube_density, vol / cube_vol);
        if (!per_cube[i].empty()) ++result.filled_cubes;
        for (const Placement& pl : per_cube[i]) {
            Placement out = pl;
            out.body_ref += ref_base;
            result.packing.placements.push_back(std::move(out));
            ++result.added_placements;
        }
    }
    if (cubes == 0) min_cube_density = 0.0;
    result.min_cube_density = min_cube_density;

    ValidationReport out_report = validate(result.packing);
    if (!out_report.ok())
        throw std::logic_error("fill: constructed packing failed validation");
    DensityInterval out_dens = density(result.packing);
    result.achieved_density = out_dens.lower;

    double gain = result.achieved_density - result.base_density;
    double floor = result.complement_fraction * result.min_cube_density;
    if (gain < floor - 1e-9)
        throw std::logic_error("fill: density gain fell below the measured in-cube floor");
    if (result.achieved_density < result.base_density - 1e-12)
        throw std::logic_error("fill: density decreased");
    if (plan.expected_floor && result.achieved_density < *plan.expected_floor)
        throw std::runtime_error("fill: achieved density missed the expected floor");
    return result;
}

std::vector<LevelResult> iterate_fill(const PeriodicPacking& base,
                                      const std::vector<FillPlan>& plans) {
    std::vector<LevelResult> out;
    if (plans.empty()) {
        LevelResult lr;
        lr.packing = base;
        lr.density = density(base).lower;
        lr.efficiency = 0.0;
        out.push_back(std::move(lr));
        return out;
    }
    const PeriodicPacking* current = &base;
    double prev_density = density(base).lower;
    for (const FillPlan& plan : plans) {
        FillResult fr = fill_interstices(*current, plan);
        LevelResult lr;
        lr.vacuous = fr.vacuous;
        lr.density = fr.achieved_density;
        double leftover = 1.0 - fr.base_density;
        lr.efficiency = leftover > 0.0 ? (fr.achieved_density - fr.base_density) / leftover : 0.0;
        lr.packing = std::move(fr.packing);
        if (lr.density < prev_density - 1e-12)
            throw std::logic_error("iterate_fill: density decreased across levels");
        prev_density = lr.density;
        out.push_back(std::move(lr));
        current = &out.back().packing;
    }
    return out;
}

std::vector<ConvergenceRow> convergence_experiment(const PeriodicPacking& base,
                                                   const ReferencePacking& reference,
                                                   const std::vector<double>& scales,
                                                   const std::vector<int>& m_schedule,
                                                   double gap_step_tol) {
    if (scales.empty()) throw std::invalid_argument("convergence: need at least one scale");
    if (scales.size() != m_schedule.size())
        throw std::invalid_argument("convergence: scales and levels differ in length");
    for (std::size_t i = 1; i < scales.size(); ++i)
        if (!(scales[i] < scales[i - 1]))
            throw std::invalid_argument("convergence: scales must be strictly decreasing");

    double base_density = density(base).lower;
    double limit = limit_density(base_density, reference.analytic_density);
    std::vector<ConvergenceRow> rows;
    for (std::size_t i = 0; i < scales.size(); ++i) {
        FillPlan plan;
        plan.m = m_schedule[i];
        plan.scale = scales[i];
        plan.reference = reference.name;
        FillResult fr = fill_interstices(base, plan);
        ConvergenceRow row;
        row.scale = scales[i];
        row.m = m_schedule[i];
        row.achieved = fr.achieved_density;
        row.limit = limit;
        row.gap = limit - fr.achieved_density;
        if (row.gap < -1e-9)
            throw std::logic_error("convergence: achieved density exceeded the limit");
        if (!rows.empty() && row.gap > rows.back().gap + gap_step_tol)
            throw std::runtime_error("convergence: gap regressed beyond the per-step tolerance");
        rows.push_back(row);
    }
    return rows;
}

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
    out << "r,m,achieved,limit,gap\n";
    for (const ConvergenceRow& row : rows) {
        out << format_double(row.scale) << ',' << row.m << ',' << format_double(row.achieved)
            << ',' << format_double(row.limit) << ',' << format_double(row.gap) << "\n";
    }
}

void write_levels_csv(std::ostream& out, const std::vector<LevelResult>& levels) {
    out << "level,density,efficiency,placements\n";
    for (std::size_t i = 0; i < levels.size(); ++i) {
        out << (i + 1) << ',' << format_double(levels[i].density) << ','
            << format_double(levels[i].efficiency) << ',' << levels[i].packing.placements.size()
            << "\n";
    }
}

}  // namespace polypack
