// Acceptance harness. Each criterion prints exactly one PASS/FAIL line;
// the exit code is the number of failed criteria. Frozen thresholds come
// from the oracle runs recorded under data/calibration/.

#include "polypack/generators.hpp"
#include "polypack/geometry.hpp"
#include "polypack/hierarchy.hpp"
#include "polypack/packing.hpp"

#include "support/oracles.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace polypack;

namespace {

const double kPi = std::numbers::pi;
const double kHex = kPi / std::sqrt(12.0);
const double kFcc = kPi / (3.0 * std::sqrt(2.0));
const std::uint64_t kSeed = 20260817;

int failures = 0;

void report(int criterion, bool ok, const std::string& what, const std::string& detail = "") {
    if (ok) {
        std::printf("PASS criterion %d: %s\n", criterion, what.c_str());
    } else {
        std::printf("FAIL criterion %d: %s%s%s\n", criterion, what.c_str(),
                    detail.empty() ? "" : " -- ", detail.c_str());
        ++failures;
    }
    std::fflush(stdout);
}

double round4(double x) { return std::round(x * 1e4) / 1e4; }

// CSV bytes produced by the first runs of criteria 6 and 8, re-derived and
// compared by criterion 9.
std::string conv_csv_first;
std::string levels_csv_first;

const std::vector<double> kConvScales = {0.125, 0.0625, 0.03125, 0.015625};
const std::vector<int> kConvLevels = {3, 4, 5, 6};
const std::vector<FillPlan> kIteratePlans = {{0, 0.25, "hex", std::nullopt},
                                             {5, 0.00390625, "hex", std::nullopt}};

void criterion1() {
    const char* what = "two-stage limit rounds to 0.9913 for disks and 0.9326 for spheres";
    try {
        bool ok = round4(limit_density(kHex, kHex)) == 0.9913 &&
                  round4(limit_density(kFcc, kFcc)) == 0.9326;
        std::ostringstream detail;
        detail << "got " << format_double(limit_density(kHex, kHex)) << " and "
               << format_double(limit_density(kFcc, kFcc));
        report(1, ok, what, ok ? "" : detail.str());
    } catch (const std::exception& e) {
        report(1, false, what, e.what());
    }
}

void criterion2() {
    const char* what = "hex and fcc generators validate cleanly, match their analytic "
                       "densities to 1e-9, and agree with monte carlo within 4 standard errors";
    try {
        bool ok = true;
        std::ostringstream detail;
        struct Case {
            ReferencePacking ref;
            double analytic;
        };
        Case cases[] = {{hex_disks(1.0), kHex}, {fcc_spheres(1.0), kFcc}};
        for (const Case& c : cases) {
            ValidationReport vr = validate(c.ref.packing);
            if (!vr.violations.empty()) {
                ok = false;
                detail << c.ref.name << " has violations; ";
                continue;
            }
            double d = density(c.ref.packing).lower;
            if (std::fabs(d - c.analytic) > 1e-9) {
                ok = false;
                detail << c.ref.name << " density " << format_double(d) << "; ";
            }
            MonteCarloEstimate mc = density_monte_carlo(c.ref.packing, 1000000, kSeed);
            if (std::fabs(mc.estimate - c.analytic) > 4.0 * mc.standard_error) {
                ok = false;
                detail << c.ref.name << " mc " << format_double(mc.estimate) << " se "
                       << format_double(mc.standard_error) << "; ";
            }
        }
        report(2, ok, what, detail.str());
    } catch (const std::exception& e) {
        report(2, false, what, e.what());
    }
}

void criterion3() {
    const char* what = "unit-disk volume intervals at levels 4..10 contain pi with "
                       "nonincreasing widths and width(10) <= width(5)/4";
    try {
        Body disk = make_ball({0.0, 0.0}, 1.0);
        bool ok = true;
        std::ostringstream detail;
        double prev_width = -1.0, width5 = 0.0, width10 = 0.0;
        for (int k = 4; k <= 10; ++k) {
            DensityInterval v = jordan_volume(disk, k);
            if (!v.contains(kPi)) {
                ok = false;
                detail << "level " << k << " misses pi; ";
            }
            if (prev_width >= 0.0 && v.width() > prev_width) {
                ok = false;
                detail << "width grew at level " << k << "; ";
            }
            prev_width = v.width();
            if (k == 5) width5 = v.width();
            if (k == 10) width10 = v.width();
        }
        if (width10 > width5 / 4.0) {
            ok = false;
            detail << "width(10)=" << format_double(width10) << " vs width(5)/4="
                   << format_double(width5 / 4.0);
        }
        report(3, ok, what, detail.str());
    } catch (const std::exception& e) {
        report(3, false, what, e.what());
    }
}

void criterion4() {
    const char* what = "on 200 random disks and boxes the inner grid is contained in the "
                       "outer grid and volumes are monotone under refinement";
    try {
        oracle::Rng rng(kSeed);
        int counterexamples = 0;
        for (int trial = 0; trial < 200; ++trial) {
            Body body;
            if (trial % 2 == 0) {
                Vec center = {rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
                body = make_ball(center, rng.uniform(0.1, 0.5));
            } else {
                Vec lo = {rng.uniform(-0.75, 0.0), rng.uniform(-0.75, 0.0)};
                Vec hi = {lo[0] + rng.uniform(0.1, 0.75), lo[1] + rng.uniform(0.1, 0.75)};
                body = make_box(lo, hi);
            }
            double prev_inner = -1.0, prev_outer = -1.0;
            for (int k = 2; k <= 5; ++k) {
                CubeSet inner = grid_inner(body, k);
                CubeSet outer = grid_outer(body, k);
                bool nested = true;
                for (std::size_t i = 0; i < inner.count(); ++i)
                    if (!outer.contains(inner.cube(i))) nested = false;
                bool monotone = (prev_inner < 0.0 || inner.volume() >= prev_inner - 1e-15) &&
                                (prev_outer < 0.0 || outer.volume() <= prev_outer + 1e-15);
                if (!nested || !monotone) ++counterexamples;
                prev_inner = inner.volume();
                prev_outer = outer.volume();
            }
        }
        std::ostringstream detail;
        detail << counterexamples << " counterexamples";
        report(4, counterexamples == 0, what, counterexamples == 0 ? "" : detail.str());
    } catch (const std::exception& e) {
        report(4, false, what, e.what());
    }
}

void criterion5() {
    const char* what = "validate matches the brute-force all-images oracle on 1000 random "
                       "disk instances";
    try {
        oracle::Rng rng(kSeed + 1);
        int disagreements = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            PeriodicPacking pk = make_cell({1.0, 1.0});
            int count = rng.uniform_int(1, 8);
            for (int i = 0; i < count; ++i) {
                pk.bodies.push_back(make_ball(Vec(2, 0.0), rng.uniform(0.02, 0.3)));
                pk.placements.push_back(
                    {static_cast<int>(pk.bodies.size()) - 1,
                     {rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)},
                     std::nullopt});
            }
            if (validate(pk).ok() != oracle::brute_force_valid(pk)) ++disagreements;
        }
        std::ostringstream detail;
        detail << disagreements << " disagreements";
        report(5, disagreements == 0, what, disagreements == 0 ? "" : detail.str());
    } catch (const std::exception& e) {
        report(5, false, what, e.what());
    }
}

void criterion6() {
    // The floor 0.9334 is frozen from the oracle run in
    // data/calibration/hex_converge.csv (final achieved 0.933469008741621);
    // the cap is the two-stage limit 0.991333.
    const char* what = "hex-in-hex convergence: gap shrinks along the schedule, final "
                       "density in [0.9334, 0.991333], every row confirmed by monte carlo";
    try {
        ReferencePacking hex = hex_disks(1.0);
        std::vector<ConvergenceRow> rows =
            convergence_experiment(hex.packing, hex, kConvScales, kConvLevels);
        std::ostringstream csv;
        write_convergence_csv(csv, rows);
        conv_csv_first = csv.str();

        bool ok = rows.size() == kConvScales.size();
        std::ostringstream detail;
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (rows[i].gap > rows[i - 1].gap + 0.005) {
                ok = false;
                detail << "gap regressed at row " << i << "; ";
            }
        if (!(rows.back().gap < rows.front().gap)) {
            ok = false;
            detail << "gap did not shrink overall; ";
        }
        double final_density = rows.back().achieved;
        if (!(final_density >= 0.9334 && final_density <= 0.991333)) {
            ok = false;
            detail << "final achieved " << format_double(final_density) << "; ";
        }
        for (std::size_t i = 0; i < rows.size(); ++i) {
            FillPlan plan{rows[i].m, rows[i].scale, "hex", std::nullopt};
            FillResult fr = fill_interstices(hex.packing, plan);
            MonteCarloEstimate mc =
                density_monte_carlo(fr.packing, 1000000, kSeed + 2 + static_cast<std::uint64_t>(i));
            if (std::fabs(mc.estimate - rows[i].achieved) > 4.0 * mc.standard_error) {
                ok = false;
                detail << "mc off at row " << i << " (" << format_double(mc.estimate) << "); ";
            }
        }
        report(6, ok, what, detail.str());
    } catch (const std::exception& e) {
        report(6, false, what, e.what());
    }
}

void criterion7() {
    const char* what = "square fills of square-based packings reach density 1 to 1e-9";
    try {
        bool ok = true;
        std::ostringstream detail;
        PeriodicPacking empty = make_cell({1.0, 1.0});
        for (int m = 0; m <= 3; ++m) {
            double scale = 1.0 / static_cast<double>(1 << (m + 1));
            FillResult fr = fill_interstices(empty, FillPlan{m, scale, "square", std::nullopt});
            if (std::fabs(fr.achieved_density - 1.0) > 1e-9) {
                ok = false;
                detail << "empty cell at level " << m << " reached "
                       << format_double(fr.achieved_density) << "; ";
            }
        }
        for (double side : {1.0, 0.7}) {
            ReferencePacking sq = square_tiling(side);
            for (int m = 0; m <= 4; ++m)
                if (complement_grid(sq.packing, m).count() != 0) {
                    ok = false;
                    detail << "tiling side " << format_double(side) << " left complement at level "
                           << m << "; ";
                }
            FillResult fr =
                fill_interstices(sq.packing, FillPlan{3, 0.01, "square", std::nullopt});
            if (fr.added_placements != 0 || std::fabs(fr.achieved_density - 1.0) > 1e-9) {
                ok = false;
                detail << "tiling side " << format_double(side) << " fill changed density to "
                       << format_double(fr.achieved_density) << "; ";
            }
        }
        report(7, ok, what, detail.str());
    } catch (const std::exception& e) {
        report(7, false, what, e.what());
    }
}

void criterion8() {
    const char* what = "two-level hex iteration is nondecreasing, beats the "
                       "1-(1-(hex-eps*))^2 bound, and folds back through iterate_limit";
    try {
        PeriodicPacking base = make_cell({1.0, 1.0});
        std::vector<LevelResult> levels = iterate_fill(base, kIteratePlans);
        std::ostringstream csv;
        write_levels_csv(csv, levels);
        levels_csv_first = csv.str();

        bool ok = levels.size() == 2;
        std::ostringstream detail;
        double e1 = levels[0].efficiency, e2 = levels[1].efficiency;
        if (std::fabs(levels[0].density - kPi / 8.0) > 1e-12) {
            ok = false;
            detail << "level-1 density " << format_double(levels[0].density) << "; ";
        }
        if (levels[1].density < levels[0].density) {
            ok = false;
            detail << "density decreased; ";
        }
        double eps_star = kHex - e1;  // measured level-1 shortfall
        double bound = 1.0 - std::pow(1.0 - (kHex - eps_star), 2.0);
        if (levels[1].density < bound - 1e-12) {
            ok = false;
            detail << "achieved " << format_double(levels[1].density) << " below bound "
                   << format_double(bound) << "; ";
        }
        double folded = iterate_limit({e1, e2});
        if (std::fabs(folded - levels[1].density) > 1e-12) {
            ok = false;
            detail << "fold mismatch " << format_double(folded) << " vs "
                   << format_double(levels[1].density) << "; ";
        }
        report(8, ok, what, detail.str());
    } catch (const std::exception& e) {
        report(8, false, what, e.what());
    }
}

void criterion9() {
    const char* what = "repeating the convergence and iteration runs reproduces their CSV "
                       "output byte for byte";
    try {
        if (conv_csv_first.empty() || levels_csv_first.empty()) {
            report(9, false, what, "criteria 6 and 8 did not produce CSV to compare against");
            return;
        }
        ReferencePacking hex = hex_disks(1.0);
        std::vector<ConvergenceRow> rows =
            convergence_experiment(hex.packing, hex, kConvScales, kConvLevels);
        std::ostringstream conv;
        write_convergence_csv(conv, rows);

        PeriodicPacking base = make_cell({1.0, 1.0});
        std::vector<LevelResult> levels = iterate_fill(base, kIteratePlans);
        std::ostringstream lv;
        write_levels_csv(lv, levels);

        bool ok = conv.str() == conv_csv_first && lv.str() == levels_csv_first;
        report(9, ok, what, ok ? "" : "csv bytes differ between runs");
    } catch (const std::exception& e) {
        report(9, false, what, e.what());
    }
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    if (failures == 0) std::printf("all criteria passed\n");
    return failures;
}
