#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "icx/cli.hpp"

namespace {

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"inverse eigenvector centrality toolkit"};
    app.require_subcommand(1);

    icx::RunConfig cfg;
    std::string format = "json";
    std::string problems;
    std::vector<int> swap;
    double rho = 0.0;

    const struct {
        const char* name;
        const char* help;
        icx::Command command;
    } commands[] = {
        {"centrality", "compute the spectral radius and centrality scores", icx::Command::Centrality},
        {"solve", "find optimal weights realising a target centrality", icx::Command::Solve},
        {"bounds", "a priori objective bounds without solving", icx::Command::Bounds},
        {"verify", "check that given weights realise a given (rho, c)", icx::Command::Verify},
        {"export", "emit the parsed graph in another format", icx::Command::Export},
        {"reproduce", "cross-objective matrix of all six criteria", icx::Command::Reproduce},
    };

    for (const auto& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        sub->add_option("--graph", cfg.graph_path, "edge list file (tail head [weight])")
            ->required();
        sub->add_option("--centrality", cfg.centrality_path,
                        "file with one positive score per node");
        sub->add_option("--swap", swap, "derive the target by swapping two score components")
            ->expected(2);
        sub->add_option("--rho", rho, "target spectral radius (default: the graph's own)");
        sub->add_option("--epsilon", cfg.epsilon, "weight floor")->capture_default_str();
        sub->add_option("--beta", cfg.beta_path, "file with one positive cost per arc");
        sub->add_option("--problem", problems, "comma list out of p1..p6 (default all)");
        sub->add_option("--out", cfg.out_path, "output file, '-' for stdout");
        sub->add_option("--format", format, "json|csv|dot")->capture_default_str();
        sub->add_flag("--giant-scc", cfg.giant_scc,
                      "restrict to the giant strongly connected component");
        if (c.command == icx::Command::Reproduce)
            sub->add_option("--dataset", cfg.dataset,
                            "published network name (monkey|hightech|bison)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    for (const auto& c : commands) {
        if (app.got_subcommand(c.name)) {
            cfg.command = c.command;
            CLI::App* sub = app.get_subcommand(c.name);
            if (sub->count("--rho"))
                cfg.rho = rho;
            if (!swap.empty())
                cfg.swap = std::make_pair(swap[0], swap[1]);
        }
    }

    if (auto f = icx::format_from_string(format)) {
        cfg.format = *f;
    } else {
        std::cerr << "error: unknown format \"" << format << "\" (expected json, csv or dot)\n";
        return 1;
    }
    for (const std::string& tag : split_commas(problems)) {
        if (auto p = icx::problem_from_string(tag)) {
            cfg.problems.push_back(*p);
        } else {
            std::cerr << "error: unknown problem tag \"" << tag << "\" (expected p1..p6)\n";
            return 1;
        }
    }

    return icx::run(cfg, std::cout, std::cerr);
}
