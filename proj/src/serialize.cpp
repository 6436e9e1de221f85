#include "icx/serialize.hpp"

#include <charconv>
#include <system_error>

#include "icx/errors.hpp"

namespace icx {

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

ordered_json centrality_to_json(const CentralityResult& r) {
    ordered_json rec;
    rec["nodes"] = r.c.size() - 1;
    rec["rho"] = r.rho;
    ordered_json c = ordered_json::array();
    for (std::size_t j = 1; j < r.c.size(); ++j)
        c.push_back(r.c[j]);
    rec["c"] = std::move(c);
    rec["iterations"] = r.iterations;
    rec["residual_inf"] = r.residual;
    return rec;
}

std::string centrality_to_csv(const CentralityResult& r) {
    std::string out = "# rho = " + format_double(r.rho) + "\nnode,c\n";
    for (std::size_t j = 1; j < r.c.size(); ++j)
        out += std::to_string(j) + "," + format_double(r.c[j]) + "\n";
    return out;
}

ordered_json graph_to_json(const DiGraph& g) {
    ordered_json rec;
    rec["nodes"] = g.node_count();
    ordered_json arcs = ordered_json::array();
    for (int k = 0; k < g.arc_count(); ++k) {
        ordered_json a;
        a["tail"] = g.arcs()[k].tail;
        a["head"] = g.arcs()[k].head;
        a["w"] = g.weights()[k];
        arcs.push_back(std::move(a));
    }
    rec["arcs"] = std::move(arcs);
    return rec;
}

std::string graph_to_csv(const DiGraph& g) {
    std::string out = "tail,head,weight\n";
    for (int k = 0; k < g.arc_count(); ++k) {
        out += std::to_string(g.arcs()[k].tail) + "," + std::to_string(g.arcs()[k].head) + "," +
               format_double(g.weights()[k]) + "\n";
    }
    return out;
}

ordered_json solution_to_json(const DiGraph& g, const WeightSolution& s, double rho,
                              double epsilon, const ObjectiveInterval* bounds) {
    ordered_json rec;
    rec["problem"] = to_string(s.problem);
    rec["rho"] = rho;
    rec["epsilon"] = epsilon;
    rec["objective"] = s.objective;
    rec["residual_inf"] = s.residual;
    if (bounds) {
        ordered_json b;
        b["lower"] = bounds->lower;
        b["upper"] = bounds->upper;
        if (bounds->trivial)
            b["trivial"] = true;
        rec["bounds"] = std::move(b);
    }
    ordered_json weights = ordered_json::array();
    for (int k = 0; k < g.arc_count(); ++k) {
        ordered_json a;
        a["tail"] = g.arcs()[k].tail;
        a["head"] = g.arcs()[k].head;
        a["w"] = s.w[k];
        weights.push_back(std::move(a));
    }
    rec["weights"] = std::move(weights);
    ordered_json diag = ordered_json::object();
    if (s.problem == Problem::P5) {
        diag["active_nodes"] = s.active_nodes;
        diag["nodes_explored"] = s.nodes_explored;
    }
    if (s.problem == Problem::P6) {
        ordered_json changed = ordered_json::array();
        for (int k : s.changed_arcs)
            changed.push_back({g.arcs()[k].tail, g.arcs()[k].head});
        diag["changed_arcs"] = std::move(changed);
    }
    rec["diagnostics"] = std::move(diag);
    return rec;
}

std::string solution_to_csv(const DiGraph& g, const WeightSolution& s) {
    std::string out = "tail,head,weight\n";
    for (int k = 0; k < g.arc_count(); ++k) {
        out += std::to_string(g.arcs()[k].tail) + "," + std::to_string(g.arcs()[k].head) + "," +
               format_double(s.w[k]) + "\n";
    }
    return out;
}

ParsedSolution solution_from_json(const nlohmann::json& rec, const DiGraph& g) {
    ParsedSolution p;
    auto tag = problem_from_string(rec.at("problem").get<std::string>());
    if (!tag)
        throw ValidationError("unknown problem tag in solution record");
    p.solution.problem = *tag;
    p.rho = rec.at("rho").get<double>();
    p.epsilon = rec.at("epsilon").get<double>();
    p.solution.objective = rec.at("objective").get<double>();
    p.solution.residual = rec.at("residual_inf").get<double>();
    if (rec.contains("bounds")) {
        p.has_bounds = true;
        p.bounds.lower = rec["bounds"].at("lower").get<double>();
        p.bounds.upper = rec["bounds"].at("upper").get<double>();
        p.bounds.trivial = rec["bounds"].value("trivial", false);
    }
    const auto& weights = rec.at("weights");
    if (weights.size() != static_cast<std::size_t>(g.arc_count()))
        throw ValidationError("solution record does not match the graph's arc count");
    p.solution.w.assign(g.arc_count(), 0.0);
    std::vector<char> seen(g.arc_count(), 0);
    for (const auto& a : weights) {
        auto k = g.find_arc(a.at("tail").get<int>(), a.at("head").get<int>());
        if (!k || seen[*k])
            throw ValidationError("solution record arcs do not match the graph");
        seen[*k] = 1;
        p.solution.w[*k] = a.at("w").get<double>();
    }
    const auto& diag = rec.at("diagnostics");
    if (diag.contains("active_nodes"))
        p.solution.active_nodes = diag["active_nodes"].get<std::vector<int>>();
    if (diag.contains("nodes_explored"))
        p.solution.nodes_explored = diag["nodes_explored"].get<long>();
    if (diag.contains("changed_arcs")) {
        for (const auto& pair : diag["changed_arcs"]) {
            auto k = g.find_arc(pair.at(0).get<int>(), pair.at(1).get<int>());
            if (!k)
                throw ValidationError("changed arc not present in the graph");
            p.solution.changed_arcs.push_back(*k);
        }
    }
    return p;
}

ordered_json bounds_to_json(const InverseSystem& sys, const BoundsReport& rep,
                            const std::vector<Problem>& problems) {
    std::vector<Problem> sel(problems);
    if (sel.empty())
        sel.assign(kAllProblems.begin(), kAllProblems.end());
    ordered_json rec;
    rec["rho"] = sys.spec.rho;
    rec["epsilon"] = sys.spec.epsilon;
    ordered_json caps = ordered_json::array();
    for (int k = 0; k < sys.arc_count(); ++k) {
        ordered_json a;
        a["tail"] = sys.graph.arcs()[k].tail;
        a["head"] = sys.graph.arcs()[k].head;
        a["cap"] = rep.lemma.arc_cap[k];
        caps.push_back(std::move(a));
    }
    rec["arc_caps"] = std::move(caps);
    ordered_json sums = ordered_json::array();
    for (int j = 1; j <= sys.node_count(); ++j) {
        ordered_json s;
        s["node"] = j;
        s["lower"] = rep.lemma.in_sum_lo[j];
        s["upper"] = rep.lemma.in_sum_hi[j];
        sums.push_back(std::move(s));
    }
    rec["in_sums"] = std::move(sums);
    ordered_json obj = ordered_json::object();
    for (Problem p : sel) {
        const ObjectiveInterval& iv = rep.objective[static_cast<int>(p)];
        ordered_json o;
        o["lower"] = iv.lower;
        o["upper"] = iv.upper;
        if (iv.trivial)
            o["trivial"] = true;
        obj[to_string(p)] = std::move(o);
    }
    rec["objectives"] = std::move(obj);
    return rec;
}

std::string bounds_to_csv(const BoundsReport& rep, const std::vector<Problem>& problems) {
    std::vector<Problem> sel(problems);
    if (sel.empty())
        sel.assign(kAllProblems.begin(), kAllProblems.end());
    std::string out = "problem,lower,upper\n";
    for (Problem p : sel) {
        const ObjectiveInterval& iv = rep.objective[static_cast<int>(p)];
        out += std::string(to_string(p)) + "," + format_double(iv.lower) + "," +
               format_double(iv.upper) + "\n";
    }
    return out;
}

ordered_json verification_to_json(const RealizationReport& rep, double rho, double tol) {
    ordered_json rec;
    rec["rho"] = rho;
    rec["tolerance"] = tol;
    rec["residual_inf"] = rep.residual_inf;
    rec["pass"] = rep.pass;
    ordered_json per = ordered_json::array();
    for (std::size_t j = 1; j < rep.per_node.size(); ++j)
        per.push_back(rep.per_node[j]);
    rec["per_node"] = std::move(per);
    return rec;
}

} // namespace icx
