#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "icx/solvers.hpp"

namespace icx {

enum class Command { Centrality, Solve, Bounds, Verify, Export, Reproduce };
enum class OutputFormat { Json, Csv, Dot };

std::optional<Command> command_from_string(const std::string& s);
std::optional<OutputFormat> format_from_string(const std::string& s);

struct RunConfig {
    Command command = Command::Centrality;
    std::string graph_path;
    std::string centrality_path;              // empty: derive from the forward pass
    std::optional<std::pair<int, int>> swap;  // exchange two score components
    std::optional<double> rho;                // default: forward rho0
    double epsilon = 1e-3;
    std::string beta_path;                    // empty: beta == 1
    std::vector<Problem> problems;            // empty: all six
    std::string out_path;                     // empty: none; "-": stdout
    OutputFormat format = OutputFormat::Json;
    bool giant_scc = false;
    std::string dataset;                      // reproduce: published network name
};

/// Execute one command. Human-readable output goes to `out`, notes and error
/// text to `err`. Returns the process exit code: 0 success, 2 connectivity
/// precondition failed, 3 inadmissible epsilon, 1 anything else (including a
/// failed `verify` and a violated cross-optimality check in `reproduce`).
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace icx
