#include <doctest.h>

#include <stdexcept>

#include "polypack/generators.hpp"
#include "polypack/hierarchy.hpp"

#include "support/oracles.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

using namespace polypack;

namespace {

const double kPi = std::numbers::pi;

double round4(double x) { return std::round(x * 1e4) / 1e4; }

}  // namespace

TEST_CASE("limit of a two-stage fill") {
    double hex = kPi / std::sqrt(12.0);
    CHECK(round4(limit_density(hex, hex)) == 0.9913);
    double fcc = kPi / (3.0 * std::sqrt(2.0));
    CHECK(round4(limit_density(fcc, fcc)) == 0.9326);

    CHECK(limit_density(0.37, 0.0) == 0.37);
    CHECK(limit_density(0.0, 0.37) == 0.37);
    CHECK(limit_density(1.0, 0.37) == 1.0);

    CHECK_THROWS_AS(limit_density(-0.1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(limit_density(0.5, 1.1), std::invalid_argument);
}

TEST_CASE("the two-stage limit is symmetric in its arguments") {
    oracle::Rng rng(77);
    for (int i = 0; i < 50; ++i) {
        double a = rng.uniform(0.0, 1.0), b = rng.uniform(0.0, 1.0);
        CHECK(limit_density(a, b) == doctest::Approx(limit_density(b, a)).epsilon(1e-12));
    }
}

TEST_CASE("iterated limit folds leftover volume") {
    CHECK(iterate_limit({0.5}) == 0.5);
    double hex = kPi / std::sqrt(12.0);
    CHECK(iterate_limit({hex, hex}) == 0.9913323308101046);
    CHECK(iterate_limit({0.9069, 0.9069, 0.9069}) ==
          doctest::Approx(1.0 - 0.0931 * 0.0931 * 0.0931).epsilon(1e-12));
    CHECK_THROWS_AS(iterate_limit({}), std::invalid_argument);
    CHECK_THROWS_AS(iterate_limit({0.5, 1.2}), std::invalid_argument);

    oracle::Rng rng(4096);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> deltas;
        int count = rng.uniform_int(1, 5);
        for (int i = 0; i < count; ++i) deltas.push_back(rng.uniform(0.0, 1.0));
        double folded = deltas[0];
        for (std::size_t i = 1; i < deltas.size(); ++i)
            folded = limit_density(folded, deltas[i]);
        CHECK(iterate_limit(deltas) == doctest::Approx(folded).epsilon(1e-12));
    }
}

TEST_CASE("commensurate square fill of an empty cell reaches density one exactly") {
    PeriodicPacking base = make_cell({1.0, 1.0});
    FillPlan plan{2, 0.125, "square", std::nullopt};
    FillResult fr = fill_interstices(base, plan);
    CHECK_FALSE(fr.vacuous);
    CHECK(fr.complement_cubes == 16);
    CHECK(fr.complement_fraction == 1.0);
    CHECK(fr.filled_cubes == 16);
    CHECK(fr.added_placements == 64);
    CHECK(fr.min_cube_density == 1.0);
    CHECK(fr.achieved_density == 1.0);
    CHECK(validate(fr.packing).ok());
}

TEST_CASE("filling a full cell is a no-op") {
    PeriodicPacking base = make_cell({1.0, 1.0});
    base.bodies.push_back(make_box({0.0, 0.0}, {1.0, 1.0}));
    base.placements.push_back({0, {0.0, 0.0}, std::nullopt});
    FillPlan plan{3, 0.01, "square", std::nullopt};
    FillResult fr = fill_interstices(base, plan);
    CHECK_FALSE(fr.vacuous);
    CHECK(fr.complement_cubes == 0);
    CHECK(fr.added_placements == 0);
    CHECK(fr.achieved_density == 1.0);
    CHECK(fr.packing.placements.size() == base.placements.size());
}

TEST_CASE("hex interstices filled with tiny hex copies hit the frozen density") {
    // Frozen in data/calibration/fill_hex_m6.csv.
    ReferencePacking hex = hex_disks(1.0);
    FillPlan plan{6, 0.015625, "hex", 0.9334};
    FillResult fr = fill_interstices(hex.packing, plan);
    CHECK_FALSE(fr.vacuous);
    CHECK(fr.base_density == 0.9068996821171089);
    CHECK(fr.complement_fraction == 0.05859375);
    CHECK(fr.min_cube_density == 0.45344984105855446);
    CHECK(fr.achieved_density == 0.933469008741621);
    CHECK(fr.achieved_density < limit_density(fr.base_density, hex.analytic_density));
    CHECK(fr.added_placements == 240);
    CHECK(fr.packing.placements.size() == 242);
    CHECK(fr.achieved_density - fr.base_density >=
          fr.complement_fraction * fr.min_cube_density - 1e-12);
}

TEST_CASE("a scale too large for the grid cube is reported as vacuous") {
    ReferencePacking hex = hex_disks(1.0);
    FillPlan plan{3, 0.2, "hex", std::nullopt};  // scaled diameter 0.4 > cube side 0.25
    FillResult fr = fill_interstices(hex.packing, plan);
    CHECK(fr.vacuous);
    CHECK(fr.added_placements == 0);
    CHECK(fr.achieved_density == fr.base_density);
    CHECK(fr.packing.placements.size() == hex.packing.placements.size());
}

TEST_CASE("an expected floor that is missed raises an error") {
    PeriodicPacking base = make_cell({1.0, 1.0});
    FillPlan plan{0, 0.25, "hex", 0.5};  // achieves pi/8, well short of 0.5
    CHECK_THROWS_AS(fill_interstices(base, plan), std::runtime_error);
}

TEST_CASE("fill rejects bad inputs") {
    PeriodicPacking overlap = make_cell({1.0, 1.0});
    overlap.bodies.push_back(make_ball(Vec(2, 0.0), 0.6));
    overlap.placements.push_back({0, {0.5, 0.5}, std::nullopt});
    CHECK_THROWS_AS(fill_interstices(overlap, FillPlan{2, 0.01, "hex", std::nullopt}),
                    std::invalid_argument);

    PeriodicPacking base = make_cell({1.0, 1.0});
    CHECK_THROWS_AS(fill_interstices(base, FillPlan{2, 0.01, "fcc", std::nullopt}),
                    std::invalid_argument);  // dimension mismatch
    CHECK_THROWS_AS(fill_interstices(base, FillPlan{2, -1.0, "hex", std::nullopt}),
                    std::invalid_argument);
}

TEST_CASE("iterating square fills saturates after the first level") {
    PeriodicPacking base = make_cell({1.0, 1.0});
    std::vector<FillPlan> plans = {{0, 0.5, "square", std::nullopt},
                                   {1, 0.25, "square", std::nullopt},
                                   {2, 0.125, "square", std::nullopt}};
    std::vector<LevelResult> levels = iterate_fill(base, plans);
    REQUIRE(levels.size() == 3);
    for (const LevelResult& lr : levels) CHECK(lr.density == 1.0);
    CHECK(levels[0].efficiency == 1.0);
    CHECK(levels[1].efficiency == 0.0);  // nothing left to recover
}

TEST_CASE("iterating with no plans reports the base alone") {
    ReferencePacking hex = hex_disks(1.0);
    std::vector<LevelResult> levels = iterate_fill(hex.packing, {});
    REQUIRE(levels.size() == 1);
    CHECK(levels[0].density == doctest::Approx(kPi / std::sqrt(12.0)).epsilon(1e-12));
    CHECK(levels[0].efficiency == 0.0);
}

TEST_CASE("two-level hex iteration from an empty cell beats the per-level bound") {
    // Frozen in data/calibration/iterate_two_level.csv.
    PeriodicPacking base = make_cell({1.0, 1.0});
    std::vector<FillPlan> plans = {{0, 0.25, "hex", std::nullopt},
                                   {5, 0.00390625, "hex", std::nullopt}};
    std::vector<LevelResult> levels = iterate_fill(base, plans);
    REQUIRE(levels.size() == 2);

    double e1 = levels[0].efficiency;
    double e2 = levels[1].efficiency;
    CHECK(levels[0].density == kPi / 8.0);
    CHECK(e1 == kPi / 8.0);
    CHECK(levels[1].density == 0.7685243747308391);
    CHECK(e2 == 0.6188452572793112);
    CHECK(e2 >= e1);
    CHECK(levels[1].density >= levels[0].density);
    CHECK(levels[1].packing.placements.size() == 7842);

    double bound = 1.0 - (1.0 - e1) * (1.0 - e1);
    CHECK(levels[1].density >= bound - 1e-12);
    CHECK(std::fabs(iterate_limit({e1, e2}) - levels[1].density) <= 1e-12);
}

TEST_CASE("convergence of hex fills matches the frozen schedule") {
    // Frozen in data/calibration/hex_converge.csv.
    ReferencePacking hex = hex_disks(1.0);
    std::vector<ConvergenceRow> rows = convergence_experiment(
        hex.packing, hex, {0.125, 0.0625, 0.03125, 0.015625}, {3, 4, 5, 6});
    REQUIRE(rows.size() == 4);
    std::vector<double> achieved = {0.9068996821171089, 0.9068996821171089, 0.91752741276692,
                                    0.933469008741621};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].achieved == achieved[i]);
        CHECK(rows[i].limit == 0.9913323308101046);
        CHECK(rows[i].gap == doctest::Approx(rows[i].limit - achieved[i]).epsilon(1e-15));
        if (i > 0) CHECK(rows[i].gap <= rows[i - 1].gap + 1e-15);
    }
    CHECK(rows.back().gap < rows.front().gap);
}

TEST_CASE("convergence on a square-filled empty cell closes the gap completely") {
    PeriodicPacking base = make_cell({1.0, 1.0});
    ReferencePacking sq = square_tiling(1.0);
    std::vector<ConvergenceRow> rows = convergence_experiment(base, sq, {0.5, 0.25}, {0, 1});
    REQUIRE(rows.size() == 2);
    for (const ConvergenceRow& row : rows) {
        CHECK(row.achieved == 1.0);
        CHECK(row.limit == 1.0);
        CHECK(row.gap == 0.0);
    }
}

TEST_CASE("a single convergence row agrees with a direct fill") {
    ReferencePacking hex = hex_disks(1.0);
    std::vector<ConvergenceRow> rows =
        convergence_experiment(hex.packing, hex, {0.03125}, {5});
    FillResult fr = fill_interstices(hex.packing, FillPlan{5, 0.03125, "hex", std::nullopt});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].achieved == fr.achieved_density);
}

TEST_CASE("convergence rejects malformed schedules and regressing gaps") {
    ReferencePacking hex = hex_disks(1.0);
    CHECK_THROWS_AS(convergence_experiment(hex.packing, hex, {0.125, 0.0625}, {3}),
                    std::invalid_argument);
    CHECK_THROWS_AS(convergence_experiment(hex.packing, hex, {0.1, 0.1}, {3, 3}),
                    std::invalid_argument);
    CHECK_THROWS_AS(convergence_experiment(hex.packing, hex, {}, {}), std::invalid_argument);
    // Dropping the grid level undoes the previous row's recovery by far more
    // than the default per-step slack, which must be flagged.
    CHECK_THROWS_AS(
        convergence_experiment(hex.packing, hex, {0.03125, 0.015625}, {5, 3}),
        std::runtime_error);
}

TEST_CASE("csv writers emit the documented headers") {
    std::ostringstream conv;
    write_convergence_csv(conv, {{0.5, 1, 0.9, 0.95, 0.05}});
    CHECK(conv.str() == "r,m,achieved,limit,gap\n0.5,1,0.9,0.95,0.05\n");

    PeriodicPacking base = make_cell({1.0, 1.0});
    std::vector<LevelResult> levels = iterate_fill(base, {{0, 0.5, "square", std::nullopt}});
    std::ostringstream lv;
    write_levels_csv(lv, levels);
    CHECK(lv.str() == "level,density,efficiency,placements\n1,1,1,4\n");
}
