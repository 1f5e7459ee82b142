#include "polypack/cli.hpp"

#include "polypack/generators.hpp"
#include "polypack/hierarchy.hpp"
#include "polypack/packing.hpp"
#include "polypack/svg.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace polypack {

namespace {

PeriodicPacking resolve_packing(const RunConfig& cfg) {
    if (cfg.input_path) return read_packing_file(*cfg.input_path);
    if (cfg.generator) {
        if (*cfg.generator == "empty") {
            if (cfg.dim < 1) throw std::invalid_argument("empty cell needs --dim >= 1");
            return make_cell(Vec(cfg.dim, cfg.size));
        }
        return reference_by_label(*cfg.generator, cfg.size).packing;
    }
    throw std::invalid_argument("no input packing: pass --in FILE or a generator label");
}

void write_csv_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write csv file: " + path);
    out << content;
}

int run_validate(const RunConfig& cfg, std::ostream& out) {
    PeriodicPacking pk = resolve_packing(cfg);
    ValidationReport report = validate(pk);
    if (cfg.csv_path) {
        std::ostringstream csv;
        write_violations_csv(csv, report.violations);
        write_csv_file(*cfg.csv_path, csv.str());
    }
    out << (report.ok() ? "valid" : "invalid") << " placements=" << pk.placements.size()
        << " violations=" << report.violations.size()
        << (report.certified ? "" : " uncertified") << "\n";
    return report.ok() ? 0 : 1;
}

int run_density(const RunConfig& cfg, std::ostream& out) {
    PeriodicPacking pk = resolve_packing(cfg);
    DensityInterval d = density(pk, cfg.jordan_level);
    if (d.lower == d.upper) {
        out << "density " << format_double(d.lower) << "\n";
    } else {
        out << "density [" << format_double(d.lower) << ", " << format_double(d.upper)
            << "] width=" << format_double(d.width()) << "\n";
    }
    if (cfg.mc_samples > 0) {
        MonteCarloEstimate mc = density_monte_carlo(pk, cfg.mc_samples, cfg.mc_seed);
        out << "monte_carlo estimate=" << format_double(mc.estimate)
            << " se=" << format_double(mc.standard_error) << " samples=" << mc.samples << "\n";
    }
    return 0;
}

int run_fill(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.reference) throw std::invalid_argument("fill needs --ref LABEL");
    if (cfg.scales.size() != 1) throw std::invalid_argument("fill needs exactly one --scales value");
    if (cfg.levels.size() != 1) throw std::invalid_argument("fill needs exactly one --levels value");
    PeriodicPacking base = resolve_packing(cfg);
    std::size_t base_count = base.placements.size();
    FillPlan plan;
    plan.m = cfg.levels[0];
    plan.scale = cfg.scales[0];
    plan.reference = *cfg.reference;
    plan.expected_floor = cfg.expected_floor;
    ReferencePacking ref = reference_by_label(plan.reference, 1.0);
    FillResult fr = fill_interstices(base, plan);
    double limit = limit_density(fr.base_density, ref.analytic_density);
    if (cfg.out_path) write_packing_file(*cfg.out_path, fr.packing);
    if (cfg.svg_path) write_packing_svg_file(*cfg.svg_path, fr.packing, {base_count});
    if (cfg.mc_samples > 0) {
        MonteCarloEstimate mc = density_monte_carlo(fr.packing, cfg.mc_samples, cfg.mc_seed);
        out << "monte_carlo estimate=" << format_double(mc.estimate)
            << " se=" << format_double(mc.standard_error) << " samples=" << mc.samples << "\n";
    }
    out << "achieved=" << format_double(fr.achieved_density) << " limit=" << format_double(limit)
        << " gap=" << format_double(limit - fr.achieved_density)
        << (fr.vacuous ? " vacuous" : "") << "\n";
    return 0;
}

int run_iterate(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.reference) throw std::invalid_argument("iterate needs --ref LABEL");
    if (cfg.scales.empty()) throw std::invalid_argument("iterate needs --scales");
    if (cfg.scales.size() != cfg.levels.size())
        throw std::invalid_argument("iterate: --scales and --levels differ in length");
    PeriodicPacking base = resolve_packing(cfg);
    std::vector<FillPlan> plans;
    for (std::size_t i = 0; i < cfg.scales.size(); ++i) {
        FillPlan plan;
        plan.m = cfg.levels[i];
        plan.scale = cfg.scales[i];
        plan.reference = *cfg.reference;
        plans.push_back(plan);
    }
    std::vector<LevelResult> levels = iterate_fill(base, plans);
    std::vector<double> efficiencies;
    for (const LevelResult& lr : levels) efficiencies.push_back(lr.efficiency);
    if (cfg.csv_path) {
        std::ostringstream csv;
        write_levels_csv(csv, levels);
        write_csv_file(*cfg.csv_path, csv.str());
    }
    if (cfg.svg_path) {
        std::vector<std::size_t> starts;
        starts.push_back(base.placements.size());
        for (std::size_t i = 0; i + 1 < levels.size(); ++i)
            starts.push_back(levels[i].packing.placements.size());
        write_packing_svg_file(*cfg.svg_path, levels.back().packing, starts);
    }
    if (cfg.out_path) write_packing_file(*cfg.out_path, levels.back().packing);
    for (std::size_t i = 0; i < levels.size(); ++i) {
        out << "level=" << (i + 1) << " density=" << format_double(levels[i].density)
            << " efficiency=" << format_double(levels[i].efficiency)
            << (levels[i].vacuous ? " vacuous" : "") << "\n";
    }
    double folded = iterate_limit(efficiencies.empty() ? std::vector<double>{0.0} : efficiencies);
    double final_density = levels.back().density;
    out << "achieved=" << format_double(final_density) << " limit=" << format_double(folded)
        << " gap=" << format_double(folded - final_density) << "\n";
    return 0;
}

int run_converge(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.reference) throw std::invalid_argument("converge needs --ref LABEL");
    if (cfg.scales.empty()) throw std::invalid_argument("converge needs --radii");
    if (cfg.scales.size() != cfg.levels.size())
        throw std::invalid_argument("converge: --radii and --levels differ in length");
    PeriodicPacking base = resolve_packing(cfg);
    ReferencePacking ref = reference_by_label(*cfg.reference, 1.0);
    std::vector<ConvergenceRow> rows =
        convergence_experiment(base, ref, cfg.scales, cfg.levels);
    if (cfg.csv_path) {
        std::ostringstream csv;
        write_convergence_csv(csv, rows);
        write_csv_file(*cfg.csv_path, csv.str());
    }
    for (const ConvergenceRow& row : rows) {
        out << "r=" << format_double(row.scale) << " m=" << row.m
            << " achieved=" << format_double(row.achieved)
            << " limit=" << format_double(row.limit) << " gap=" << format_double(row.gap) << "\n";
        if (cfg.mc_samples > 0) {
            FillPlan plan;
            plan.m = row.m;
            plan.scale = row.scale;
            plan.reference = cfg.reference.value();
            FillResult fr = fill_interstices(base, plan);
            MonteCarloEstimate mc = density_monte_carlo(fr.packing, cfg.mc_samples, cfg.mc_seed);
            out << "monte_carlo estimate=" << format_double(mc.estimate)
                << " se=" << format_double(mc.standard_error) << " samples=" << mc.samples
                << "\n";
        }
    }
    if (cfg.svg_path) {
        FillPlan plan;
        plan.m = rows.back().m;
        plan.scale = rows.back().scale;
        plan.reference = cfg.reference.value();
        FillResult fr = fill_interstices(base, plan);
        write_packing_svg_file(*cfg.svg_path, fr.packing, {base.placements.size()});
    }
    const ConvergenceRow& last = rows.back();
    out << "achieved=" << format_double(last.achieved) << " limit=" << format_double(last.limit)
        << " gap=" << format_double(last.gap) << "\n";
    return 0;
}

int run_limit(const RunConfig& cfg, std::ostream& out) {
    if (cfg.deltas.empty()) throw std::invalid_argument("limit needs --deltas");
    out << "limit " << format_double(iterate_limit(cfg.deltas)) << "\n";
    return 0;
}

std::vector<double> parse_doubles(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw std::invalid_argument("empty entry in list: " + csv);
        std::size_t pos = 0;
        double v = std::stod(item, &pos);
        while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
        if (pos != item.size()) throw std::invalid_argument("bad number in list: " + item);
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty list: " + csv);
    return out;
}

std::vector<int> parse_ints(const std::string& csv) {
    std::vector<int> out;
    for (double v : parse_doubles(csv)) {
        int i = static_cast<int>(v);
        if (static_cast<double>(i) != v) throw std::invalid_argument("expected integers: " + csv);
        out.push_back(i);
    }
    return out;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.command == "validate") return run_validate(cfg, out);
        if (cfg.command == "density") return run_density(cfg, out);
        if (cfg.command == "fill") return run_fill(cfg, out);
        if (cfg.command == "iterate") return run_iterate(cfg, out);
        if (cfg.command == "converge") return run_converge(cfg, out);
        if (cfg.command == "limit") return run_limit(cfg, out);
        err << "error: unknown command '" << cfg.command << "'\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Periodic packings, grid complements, and multi-scale fills"};
    app.set_config("--config", "", "Config file (key = value, one section per command)");
    app.require_subcommand(0, 1);

    RunConfig cfg;
    std::string scales_csv, levels_csv, deltas_csv, radii_csv;
    std::string in_path, generator, reference, csv_path, svg_path, out_path;
    double floor_value = -1.0;

    auto add_input = [&](CLI::App* sub, bool base_name) {
        sub->add_option("--in", in_path, "Packing file to read");
        sub->add_option(base_name ? "--base" : "--generator", generator,
                        "Generator label: hex | fcc | square | empty");
        sub->add_option("--size", cfg.size, "Generator size (radius or side)");
        sub->add_option("--dim", cfg.dim, "Cell dimension for label 'empty'");
    };

    CLI::App* sub_validate = app.add_subcommand("validate", "Check a packing for overlaps");
    add_input(sub_validate, false);
    sub_validate->add_option("--csv", csv_path, "Write violations CSV");

    CLI::App* sub_density = app.add_subcommand("density", "Exact or sandwiched density");
    add_input(sub_density, false);
    sub_density->add_option("--level", cfg.jordan_level, "Grid level for non-analytic bodies");
    sub_density->add_option("--mc-samples", cfg.mc_samples, "Monte Carlo cross-check samples");
    sub_density->add_option("--seed", cfg.mc_seed, "Monte Carlo seed");

    CLI::App* sub_fill = app.add_subcommand("fill", "Fill grid complement with a reference");
    add_input(sub_fill, true);
    sub_fill->add_option("--ref", reference, "Reference label");
    sub_fill->add_option("--scale,--scales", scales_csv, "Reference scale");
    sub_fill->add_option("--m,--levels", levels_csv, "Complement grid level");
    sub_fill->add_option("--floor", floor_value, "Density floor the fill must reach");
    sub_fill->add_option("--csv", csv_path, "(unused for fill)");
    sub_fill->add_option("--svg", svg_path, "Write SVG rendering");
    sub_fill->add_option("--out", out_path, "Write filled packing");
    sub_fill->add_option("--mc-samples", cfg.mc_samples, "Monte Carlo cross-check samples");
    sub_fill->add_option("--seed", cfg.mc_seed, "Monte Carlo seed");

    CLI::App* sub_iterate = app.add_subcommand("iterate", "Fill repeatedly across levels");
    add_input(sub_iterate, true);
    sub_iterate->add_option("--ref", reference, "Reference label");
    sub_iterate->add_option("--scales", scales_csv, "Comma-separated scales");
    sub_iterate->add_option("--levels,--ms", levels_csv, "Comma-separated grid levels");
    sub_iterate->add_option("--csv", csv_path, "Write per-level CSV");
    sub_iterate->add_option("--svg", svg_path, "Write SVG rendering");
    sub_iterate->add_option("--out", out_path, "Write final packing");

    CLI::App* sub_converge = app.add_subcommand("converge", "Fresh fills at shrinking scales");
    add_input(sub_converge, true);
    sub_converge->add_option("--ref", reference, "Reference label");
    sub_converge->add_option("--radii,--scales", radii_csv, "Comma-separated scales, decreasing");
    sub_converge->add_option("--levels", levels_csv, "Comma-separated grid levels");
    sub_converge->add_option("--csv", csv_path, "Write convergence CSV");
    sub_converge->add_option("--svg", svg_path, "Write SVG of the last row");
    sub_converge->add_option("--mc-samples", cfg.mc_samples, "Monte Carlo cross-check samples");
    sub_converge->add_option("--seed", cfg.mc_seed, "Monte Carlo seed");

    CLI::App* sub_limit = app.add_subcommand("limit", "Evaluate 1 - prod(1 - delta_i)");
    sub_limit->add_option("--deltas", deltas_csv, "Comma-separated densities in [0,1]");

    for (CLI::App* sub :
         {sub_validate, sub_density, sub_fill, sub_iterate, sub_converge, sub_limit})
        sub->configurable(true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    std::vector<CLI::App*> chosen = app.get_subcommands();
    if (chosen.empty()) {
        err << "error: no command given (see --help)\n";
        return 2;
    }
    cfg.command = chosen.front()->get_name();
    try {
        if (!in_path.empty()) cfg.input_path = in_path;
        if (!generator.empty()) cfg.generator = generator;
        if (!reference.empty()) cfg.reference = reference;
        if (!csv_path.empty()) cfg.csv_path = csv_path;
        if (!svg_path.empty()) cfg.svg_path = svg_path;
        if (!out_path.empty()) cfg.out_path = out_path;
        if (floor_value >= 0.0) cfg.expected_floor = floor_value;
        if (!deltas_csv.empty()) cfg.deltas = parse_doubles(deltas_csv);
        if (!radii_csv.empty()) cfg.scales = parse_doubles(radii_csv);
        if (!scales_csv.empty()) cfg.scales = parse_doubles(scales_csv);
        if (!levels_csv.empty()) cfg.levels = parse_ints(levels_csv);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return run(cfg, out, err);
}

}  // namespace polypack
