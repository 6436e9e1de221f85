#include "icx/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "icx/errors.hpp"
#include "icx/serialize.hpp"
#include "icx/spectral.hpp"

namespace icx {

std::optional<Command> command_from_string(const std::string& s) {
    if (s == "centrality") return Command::Centrality;
    if (s == "solve") return Command::Solve;
    if (s == "bounds") return Command::Bounds;
    if (s == "verify") return Command::Verify;
    if (s == "export") return Command::Export;
    if (s == "reproduce") return Command::Reproduce;
    return std::nullopt;
}

std::optional<OutputFormat> format_from_string(const std::string& s) {
    if (s == "json") return OutputFormat::Json;
    if (s == "csv") return OutputFormat::Csv;
    if (s == "dot") return OutputFormat::Dot;
    return std::nullopt;
}

namespace {

constexpr double kVerifyTol = 1e-8;
constexpr double kCrossTol = 1e-9; // slack of the diagonal-minimality check

// Published reference networks (node count, arc count, and the two
// combinatorial diagonal values reported for them).
struct ReferenceNetwork {
    const char* name;
    int nodes;
    int arcs;
    int p5_diagonal;
    int p6_diagonal;
};

constexpr ReferenceNetwork kReferenceNetworks[] = {
    {"monkey", 16, 111, 3, 11},
    {"hightech", 21, 232, 4, 11},
    {"bison", 26, 314, 5, 9},
};

std::string describe_components(const SccPartition& part) {
    std::ostringstream os;
    os << part.components.size() << " strongly connected components with sizes";
    for (std::size_t i = 0; i < part.components.size() && i < 12; ++i)
        os << " " << part.components[i].size();
    if (part.components.size() > 12)
        os << " ...";
    return os.str();
}

void require_strongly_connected(const DiGraph& g) {
    SccPartition part = strongly_connected_components(g);
    if (part.components.size() == 1 && g.node_count() > 0)
        return;
    throw TopologyError("graph is not strongly connected (" + describe_components(part) +
                        "); rerun with --giant-scc to restrict to the giant component");
}

struct LoadedGraph {
    DiGraph g;
    std::vector<int> new_to_old; // empty unless restricted
};

LoadedGraph load_graph(const RunConfig& cfg, std::ostream& err) {
    if (cfg.graph_path.empty())
        throw ValidationError("no graph file given");
    LoadedGraph lg;
    lg.g = load_edge_list(cfg.graph_path);
    if (lg.g.node_count() == 0)
        throw ValidationError("graph file contains no arcs");
    if (!cfg.giant_scc)
        return lg;
    SccPartition part = strongly_connected_components(lg.g);
    if (part.components.size() == 1)
        return lg; // already strongly connected, nothing to restrict
    GiantSubgraph sub = giant_scc_subgraph(lg.g);
    if (sub.graph.node_count() < 2)
        throw TopologyError("giant strongly connected component has fewer than 2 nodes");
    err << "note: restricted to the giant strongly connected component ("
        << sub.graph.node_count() << " of " << lg.g.node_count()
        << " nodes); output uses relabelled node ids\n";
    lg.g = std::move(sub.graph);
    lg.new_to_old = std::move(sub.new_to_old);
    return lg;
}

std::vector<double> read_reals(const std::string& path, std::size_t count, const char* what) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open " + path);
    std::vector<double> vals;
    double x = 0.0;
    while (in >> x)
        vals.push_back(x);
    if (!in.eof())
        throw ValidationError(path + ": expected only whitespace-separated reals");
    if (vals.size() != count)
        throw ValidationError(path + ": expected " + std::to_string(count) + " " + what +
                              " values, found " + std::to_string(vals.size()));
    for (double v : vals) {
        if (!std::isfinite(v) || v <= 0.0)
            throw ValidationError(path + ": " + what + " values must be finite and positive");
    }
    return vals;
}

// Node-indexed (size n+1) score vector from a plain text file.
std::vector<double> load_scores(const std::string& path, int n) {
    std::vector<double> raw = read_reals(path, static_cast<std::size_t>(n), "score");
    std::vector<double> c(n + 1, 0.0);
    for (int j = 1; j <= n; ++j)
        c[j] = raw[j - 1];
    return c;
}

void apply_swap(std::vector<double>& c, std::pair<int, int> swap, int n) {
    auto [a, b] = swap;
    if (a < 1 || a > n || b < 1 || b > n)
        throw ValidationError("--swap node ids must be in 1.." + std::to_string(n));
    if (a == b)
        throw ValidationError("--swap node ids must be distinct");
    std::swap(c[a], c[b]);
}

// The (rho, c, epsilon) the inverse problem targets. Runs the forward pass
// only when something is missing from the command line; explicit
// --centrality plus --rho works on any graph with in-degrees >= 1.
CentralitySpec make_target(const DiGraph& g, const RunConfig& cfg) {
    if (!cfg.centrality_path.empty() && cfg.swap)
        throw ValidationError("--centrality and --swap are mutually exclusive");
    CentralitySpec spec;
    spec.epsilon = cfg.epsilon;
    bool need_forward = cfg.centrality_path.empty() || !cfg.rho;
    CentralityResult fw;
    if (need_forward) {
        require_strongly_connected(g);
        fw = power_iteration(g);
    }
    spec.rho = cfg.rho ? *cfg.rho : fw.rho;
    if (!cfg.centrality_path.empty()) {
        spec.c = load_scores(cfg.centrality_path, g.node_count());
    } else {
        spec.c = fw.c;
        if (cfg.swap)
            apply_swap(spec.c, *cfg.swap, g.node_count());
    }
    return spec;
}

std::vector<Problem> selected_problems(const RunConfig& cfg) {
    if (cfg.problems.empty())
        return std::vector<Problem>(kAllProblems.begin(), kAllProblems.end());
    std::vector<Problem> out;
    for (Problem p : cfg.problems)
        if (std::find(out.begin(), out.end(), p) == out.end())
            out.push_back(p);
    return out;
}

void write_text(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty())
        return;
    if (path == "-") {
        out << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw ValidationError("cannot open " + path + " for writing");
    f << content;
    if (!f)
        throw ValidationError("write to " + path + " failed");
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

// Output path for one problem's record when several records cannot share a
// file (csv/dot): "sol.csv" -> "sol.P1.csv".
std::string suffixed_path(const std::string& path, Problem p) {
    auto dot = path.find_last_of('.');
    auto slash = path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + "." + to_string(p);
    return path.substr(0, dot) + "." + to_string(p) + path.substr(dot);
}

std::string format_fixed(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

void note_giant(ordered_json& rec, const LoadedGraph& lg) {
    if (lg.new_to_old.empty())
        return;
    ordered_json map = ordered_json::array();
    for (std::size_t v = 1; v < lg.new_to_old.size(); ++v)
        map.push_back(lg.new_to_old[v]);
    rec["original_node_ids"] = std::move(map);
}

// ---- commands -----------------------------------------------------------

int cmd_centrality(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    LoadedGraph lg = load_graph(cfg, err);
    require_strongly_connected(lg.g);
    CentralityResult r = power_iteration(lg.g);
    out << "rho = " << format_fixed(r.rho, 4) << "\n";
    out << "c   = (";
    for (int j = 1; j <= lg.g.node_count(); ++j)
        out << (j > 1 ? ", " : "") << format_fixed(r.c[j], 4);
    out << ")\n";
    if (!cfg.out_path.empty()) {
        if (cfg.format == OutputFormat::Json) {
            ordered_json rec = centrality_to_json(r);
            note_giant(rec, lg);
            write_text(cfg.out_path, dump(rec), out);
        } else if (cfg.format == OutputFormat::Csv) {
            write_text(cfg.out_path, centrality_to_csv(r), out);
        } else {
            throw ValidationError("--format dot is not available for centrality");
        }
    }
    return 0;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    LoadedGraph lg = load_graph(cfg, err);
    CentralitySpec target = make_target(lg.g, cfg);
    InverseSystem sys = build_system(lg.g, std::move(target));
    std::vector<double> beta;
    if (!cfg.beta_path.empty())
        beta = read_reals(cfg.beta_path, static_cast<std::size_t>(lg.g.arc_count()), "beta");
    const std::vector<double>* beta_ptr = beta.empty() ? nullptr : &beta;

    std::vector<Problem> problems = selected_problems(cfg);
    ordered_json records = ordered_json::array();
    const bool records_to_stdout = cfg.out_path == "-";
    for (Problem p : problems) {
        WeightSolution s = solve(sys, p, beta_ptr);
        ObjectiveInterval iv = objective_bounds(sys, p, beta_ptr);
        if (!records_to_stdout) {
            out << to_string(p) << "  objective = " << format_fixed(s.objective, 6)
                << "  residual = " << format_double(s.residual) << "  bounds = ["
                << format_fixed(iv.lower, 6) << ", " << format_fixed(iv.upper, 6) << "]";
            if (p == Problem::P5) {
                out << "  active nodes = {";
                for (std::size_t i = 0; i < s.active_nodes.size(); ++i)
                    out << (i ? ", " : "") << s.active_nodes[i];
                out << "}";
            }
            if (p == Problem::P6)
                out << "  changed arcs = " << s.changed_arcs.size();
            out << "\n";
        }
        if (cfg.format == OutputFormat::Json) {
            ordered_json rec = solution_to_json(lg.g, s, sys.spec.rho, sys.spec.epsilon, &iv);
            note_giant(rec, lg);
            records.push_back(std::move(rec));
        } else if (!cfg.out_path.empty()) {
            std::string text = cfg.format == OutputFormat::Csv
                                   ? solution_to_csv(lg.g, s)
                                   : to_dot(lg.g.with_weights(s.w), kUnitTol);
            if (records_to_stdout)
                out << "# " << to_string(p) << "\n" << text;
            else
                write_text(problems.size() > 1 ? suffixed_path(cfg.out_path, p) : cfg.out_path,
                           text, out);
        }
    }
    if (cfg.format == OutputFormat::Json && !cfg.out_path.empty())
        write_text(cfg.out_path, dump(records), out);
    return 0;
}

int cmd_bounds(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    LoadedGraph lg = load_graph(cfg, err);
    CentralitySpec target = make_target(lg.g, cfg);
    InverseSystem sys = build_system(lg.g, std::move(target));
    std::vector<double> beta;
    if (!cfg.beta_path.empty())
        beta = read_reals(cfg.beta_path, static_cast<std::size_t>(lg.g.arc_count()), "beta");
    BoundsReport rep = bounds_report(sys, beta.empty() ? nullptr : &beta);
    std::vector<Problem> problems = selected_problems(cfg);
    for (Problem p : problems) {
        const ObjectiveInterval& iv = rep.objective[static_cast<int>(p)];
        out << to_string(p) << "  objective in [" << format_fixed(iv.lower, 6) << ", "
            << format_fixed(iv.upper, 6) << "]" << (iv.trivial ? "  (trivial)" : "") << "\n";
    }
    if (!cfg.out_path.empty()) {
        if (cfg.format == OutputFormat::Json) {
            ordered_json rec = bounds_to_json(sys, rep, problems);
            note_giant(rec, lg);
            write_text(cfg.out_path, dump(rec), out);
        } else if (cfg.format == OutputFormat::Csv) {
            write_text(cfg.out_path, bounds_to_csv(rep, problems), out);
        } else {
            throw ValidationError("--format dot is not available for bounds");
        }
    }
    return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.centrality_path.empty())
        throw ValidationError("verify needs --centrality with the scores to check");
    if (!cfg.rho)
        throw ValidationError("verify needs --rho with the spectral radius to check");
    LoadedGraph lg = load_graph(cfg, err);
    std::vector<double> c = load_scores(cfg.centrality_path, lg.g.node_count());
    RealizationReport rep = verify_realization(lg.g, c, *cfg.rho, kVerifyTol);
    out << "residual_inf = " << format_double(rep.residual_inf)
        << "  tolerance = " << format_double(kVerifyTol) << "  -> "
        << (rep.pass ? "PASS" : "FAIL") << "\n";
    if (!cfg.out_path.empty()) {
        if (cfg.format != OutputFormat::Json)
            throw ValidationError("verify records are json only");
        ordered_json rec = verification_to_json(rep, *cfg.rho, kVerifyTol);
        note_giant(rec, lg);
        write_text(cfg.out_path, dump(rec), out);
    }
    return rep.pass ? 0 : 1;
}

int cmd_export(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    LoadedGraph lg = load_graph(cfg, err);
    std::string text;
    if (cfg.format == OutputFormat::Json)
        text = dump(graph_to_json(lg.g));
    else if (cfg.format == OutputFormat::Csv)
        text = graph_to_csv(lg.g);
    else
        text = to_dot(lg.g, kUnitTol);
    if (cfg.out_path.empty() || cfg.out_path == "-")
        out << text;
    else
        write_text(cfg.out_path, text, out);
    return 0;
}

int cmd_reproduce(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    LoadedGraph lg = load_graph(cfg, err);
    const DiGraph& g = lg.g;

    // Published-network bookkeeping: warn when a named dataset does not have
    // the published shape, or note when the shape matches a known one.
    const ReferenceNetwork* ref = nullptr;
    if (!cfg.dataset.empty()) {
        for (const ReferenceNetwork& r : kReferenceNetworks)
            if (cfg.dataset == r.name)
                ref = &r;
        if (!ref)
            throw ValidationError("unknown dataset name \"" + cfg.dataset +
                                  "\" (known: monkey, hightech, bison)");
        if (g.node_count() != ref->nodes || g.arc_count() != ref->arcs)
            err << "warning: " << ref->name << " is published with " << ref->nodes << " nodes / "
                << ref->arcs << " arcs, this graph has " << g.node_count() << " / "
                << g.arc_count() << "; proceeding\n";
    } else {
        for (const ReferenceNetwork& r : kReferenceNetworks)
            if (g.node_count() == r.nodes && g.arc_count() == r.arcs)
                err << "note: graph shape matches the published " << r.name << " network\n";
    }

    require_strongly_connected(g);
    CentralityResult fw = power_iteration(g);
    std::pair<int, int> swap = cfg.swap.value_or(std::pair<int, int>{1, 2});
    CentralitySpec target;
    target.c = fw.c;
    apply_swap(target.c, swap, g.node_count());
    target.rho = cfg.rho ? *cfg.rho : fw.rho;
    target.epsilon = cfg.epsilon;
    InverseSystem sys = build_system(g, std::move(target));

    std::vector<double> beta;
    if (!cfg.beta_path.empty())
        beta = read_reals(cfg.beta_path, static_cast<std::size_t>(g.arc_count()), "beta");
    const std::vector<double>* beta_ptr = beta.empty() ? nullptr : &beta;

    std::array<WeightSolution, 6> sols;
    for (Problem p : kAllProblems)
        sols[static_cast<int>(p)] = solve(sys, p, beta_ptr);

    double cross[6][6];
    bool diagonal_minimal = true;
    for (Problem p : kAllProblems) {
        int i = static_cast<int>(p);
        for (Problem q : kAllProblems) {
            int jdx = static_cast<int>(q);
            cross[i][jdx] = evaluate_objective(sys, p, sols[jdx].w, beta_ptr);
        }
        for (int jdx = 0; jdx < 6; ++jdx)
            if (cross[i][i] > cross[i][jdx] + kCrossTol)
                diagonal_minimal = false;
    }

    out << "rho = " << format_fixed(fw.rho, 4) << "  swap = (" << swap.first << ", "
        << swap.second << ")  epsilon = " << format_double(sys.spec.epsilon) << "\n";
    out << "cross-objective matrix (row: criterion, column: solution)\n";
    out << "      ";
    for (Problem q : kAllProblems)
        out << "  " << to_string(q) << "          ";
    out << "\n";
    for (Problem p : kAllProblems) {
        int i = static_cast<int>(p);
        out << to_string(p) << "  ";
        for (int jdx = 0; jdx < 6; ++jdx)
            out << "  " << format_fixed(cross[i][jdx], 6);
        out << "\n";
    }
    out << "diagonal minimal within " << format_double(kCrossTol) << ": "
        << (diagonal_minimal ? "yes" : "NO") << "\n";
    if (ref) {
        out << "published diagonals for " << ref->name << ": P5 = " << ref->p5_diagonal
            << ", P6 = " << ref->p6_diagonal << "; computed: P5 = "
            << format_fixed(cross[4][4], 0) << ", P6 = " << format_fixed(cross[5][5], 0) << "\n";
    }

    if (!cfg.out_path.empty()) {
        if (cfg.format != OutputFormat::Json)
            throw ValidationError("reproduce records are json only");
        ordered_json rec;
        rec["nodes"] = g.node_count();
        rec["arcs"] = g.arc_count();
        rec["rho"] = sys.spec.rho;
        rec["epsilon"] = sys.spec.epsilon;
        rec["swap"] = {swap.first, swap.second};
        ordered_json c0 = ordered_json::array(), ct = ordered_json::array();
        for (int j = 1; j <= g.node_count(); ++j) {
            c0.push_back(fw.c[j]);
            ct.push_back(sys.spec.c[j]);
        }
        rec["c0"] = std::move(c0);
        rec["c_target"] = std::move(ct);
        ordered_json cj = ordered_json::object();
        for (Problem p : kAllProblems) {
            int i = static_cast<int>(p);
            ordered_json row = ordered_json::object();
            for (Problem q : kAllProblems)
                row[to_string(q)] = cross[i][static_cast<int>(q)];
            cj[to_string(p)] = std::move(row);
        }
        rec["cross_objectives"] = std::move(cj);
        rec["diagonal_minimal"] = diagonal_minimal;
        ordered_json sj = ordered_json::object();
        for (Problem p : kAllProblems) {
            int i = static_cast<int>(p);
            ObjectiveInterval iv = objective_bounds(sys, p, beta_ptr);
            sj[to_string(p)] = solution_to_json(g, sols[i], sys.spec.rho, sys.spec.epsilon, &iv);
        }
        rec["solutions"] = std::move(sj);
        note_giant(rec, lg);
        write_text(cfg.out_path, dump(rec), out);
    }
    return diagonal_minimal ? 0 : 1;
}

} // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        switch (cfg.command) {
        case Command::Centrality: return cmd_centrality(cfg, out, err);
        case Command::Solve: return cmd_solve(cfg, out, err);
        case Command::Bounds: return cmd_bounds(cfg, out, err);
        case Command::Verify: return cmd_verify(cfg, out, err);
        case Command::Export: return cmd_export(cfg, out, err);
        case Command::Reproduce: return cmd_reproduce(cfg, out, err);
        }
        throw ValidationError("unknown command");
    } catch (const TopologyError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const EpsilonError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace icx
