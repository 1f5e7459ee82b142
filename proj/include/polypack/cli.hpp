#pragma once

// Command-line front end. Every command is a thin wrapper over the library;
// run() is exposed separately so tests can drive commands in-process.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace polypack {

struct RunConfig {
    std::string command;  // validate | density | fill | iterate | converge | limit
    std::optional<std::string> input_path;  // packing file
    std::optional<std::string> generator;   // label: hex | fcc | square | empty
    int dim = 2;                            // cell dimension for generator "empty"
    double size = 1.0;                      // generator size parameter
    std::optional<std::string> reference;   // fill reference label
    std::vector<double> scales;             // per-level scales (fill takes one)
    std::vector<int> levels;                // per-level grid depths (fill takes one)
    std::vector<double> deltas;             // limit command inputs
    std::optional<double> expected_floor;   // density floor for fill
    int jordan_level = 8;
    std::optional<std::string> csv_path;
    std::optional<std::string> svg_path;
    std::optional<std::string> out_path;  // packing file to write
    std::size_t mc_samples = 0;           // 0 disables the Monte Carlo cross-check
    std::uint64_t mc_seed = 12345;
};

// Exit status: 0 success, 1 a validate run found violations, 2 rejected
// input or configuration.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (flags, subcommands, optional --config file; flags override
// file values) and dispatches to run().
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace polypack
