#include "icx/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

#include "icx/errors.hpp"

namespace icx {

DiGraph DiGraph::from_arcs(int n, std::vector<Arc> arcs, std::vector<double> weights) {
    if (n < 0)
        throw ValidationError("node count must be nonnegative");
    const auto m = arcs.size();
    if (!weights.empty() && weights.size() != m)
        throw ValidationError("weight list does not match arc count");
    if (weights.empty())
        weights.assign(m, 1.0);

    for (const Arc& a : arcs) {
        if (a.tail < 1 || a.tail > n || a.head < 1 || a.head > n)
            throw ValidationError("arc (" + std::to_string(a.tail) + "," +
                                  std::to_string(a.head) + ") has a node id outside 1.." +
                                  std::to_string(n));
        if (a.tail == a.head)
            throw ValidationError("self-loop at node " + std::to_string(a.tail));
    }
    for (double w : weights) {
        if (!std::isfinite(w) || w <= 0.0)
            throw ValidationError("arc weights must be finite and positive");
    }

    // Sort arcs (and their weights) into row-major order.
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        if (arcs[a].tail != arcs[b].tail) return arcs[a].tail < arcs[b].tail;
        return arcs[a].head < arcs[b].head;
    });

    DiGraph g;
    g.n_ = n;
    g.arcs_.reserve(m);
    g.weights_.reserve(m);
    for (std::size_t k : perm) {
        g.arcs_.push_back(arcs[k]);
        g.weights_.push_back(weights[k]);
    }
    for (std::size_t k = 1; k < m; ++k) {
        if (g.arcs_[k] == g.arcs_[k - 1])
            throw ValidationError("duplicate arc (" + std::to_string(g.arcs_[k].tail) + "," +
                                  std::to_string(g.arcs_[k].head) + ")");
    }

    g.in_arcs_.assign(n + 1, {});
    g.out_arcs_.assign(n + 1, {});
    g.back_star_.assign(n + 1, {});
    for (std::size_t k = 0; k < m; ++k) {
        g.out_arcs_[g.arcs_[k].tail].push_back(static_cast<int>(k));
        g.in_arcs_[g.arcs_[k].head].push_back(static_cast<int>(k));
    }
    // out_arcs_ is head-ascending already (row-major scan); in_arcs_ comes out
    // tail-ascending for the same reason.
    for (int j = 1; j <= n; ++j) {
        for (int k : g.in_arcs_[j])
            g.back_star_[j].push_back(g.arcs_[k].tail);
    }
    return g;
}

DiGraph DiGraph::with_weights(std::vector<double> weights) const {
    if (weights.size() != arcs_.size())
        throw ValidationError("weight list does not match arc count");
    for (double w : weights) {
        if (!std::isfinite(w) || w <= 0.0)
            throw ValidationError("arc weights must be finite and positive");
    }
    DiGraph g = *this;
    g.weights_ = std::move(weights);
    return g;
}

std::optional<int> DiGraph::find_arc(int tail, int head) const {
    if (tail < 1 || tail > n_ || head < 1 || head > n_)
        return std::nullopt;
    const auto& row = out_arcs_[tail];
    auto it = std::lower_bound(row.begin(), row.end(), head,
                               [&](int k, int h) { return arcs_[k].head < h; });
    if (it == row.end() || arcs_[*it].head != head)
        return std::nullopt;
    return *it;
}

namespace {

// Strip a trailing CR (files written on Windows) and a '#' comment.
std::string clean_line(std::string line) {
    if (auto pos = line.find('#'); pos != std::string::npos)
        line.erase(pos);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
        line.pop_back();
    return line;
}

constexpr int kMaxNodeId = 100'000'000;

} // namespace

DiGraph parse_edge_list(std::istream& in) {
    std::vector<Arc> arcs;
    std::vector<double> weights;
    int n = 0;
    int lineno = 0;
    std::string raw;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = clean_line(raw);
        if (line.empty())
            continue;
        std::istringstream fields(line);
        long long tail = 0, head = 0;
        if (!(fields >> tail >> head))
            throw ParseError(lineno, "expected `tail head [weight]`, got \"" + line + "\"");
        if (tail < 1 || head < 1 || tail > kMaxNodeId || head > kMaxNodeId)
            throw ParseError(lineno, "node ids must be in 1.." + std::to_string(kMaxNodeId));
        double w = 1.0;
        std::string wtext;
        if (fields >> wtext) {
            std::string trailing;
            if (fields >> trailing)
                throw ParseError(lineno, "unexpected trailing field \"" + trailing + "\"");
            try {
                size_t used = 0;
                w = std::stod(wtext, &used);
                if (used != wtext.size())
                    throw std::invalid_argument(wtext);
            } catch (const std::exception&) {
                throw ParseError(lineno, "bad arc weight \"" + wtext + "\"");
            }
            if (!std::isfinite(w) || w <= 0.0)
                throw ParseError(lineno, "arc weight must be finite and positive");
        }
        arcs.push_back({static_cast<int>(tail), static_cast<int>(head)});
        weights.push_back(w);
        n = std::max({n, static_cast<int>(tail), static_cast<int>(head)});
    }
    try {
        return DiGraph::from_arcs(n, std::move(arcs), std::move(weights));
    } catch (const ValidationError& e) {
        throw ParseError(lineno, e.what());
    }
}

DiGraph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in);
}

DiGraph load_edge_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open " + path.string());
    return parse_edge_list(in);
}

SccPartition strongly_connected_components(const DiGraph& g) {
    const int n = g.node_count();

    // Iterative Tarjan. Traversal order over nodes and arcs is fixed, so the
    // output is deterministic.
    std::vector<int> index(n + 1, 0), lowlink(n + 1, 0);
    std::vector<char> on_stack(n + 1, 0);
    std::vector<int> stack;
    stack.reserve(n);
    int next_index = 1;

    std::vector<std::vector<int>> components;
    std::vector<int> component_of(n + 1, -1);

    struct Frame {
        int node;
        std::size_t arc_pos; // position into out_arcs(node)
    };
    std::vector<Frame> call;

    for (int root = 1; root <= n; ++root) {
        if (index[root] != 0)
            continue;
        call.push_back({root, 0});
        index[root] = lowlink[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = 1;

        while (!call.empty()) {
            Frame& f = call.back();
            const auto& out = g.out_arcs(f.node);
            if (f.arc_pos < out.size()) {
                int w = g.arcs()[out[f.arc_pos++]].head;
                if (index[w] == 0) {
                    index[w] = lowlink[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    lowlink[f.node] = std::min(lowlink[f.node], index[w]);
                }
            } else {
                int v = f.node;
                call.pop_back();
                if (!call.empty())
                    lowlink[call.back().node] = std::min(lowlink[call.back().node], lowlink[v]);
                if (lowlink[v] == index[v]) {
                    std::vector<int> comp;
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        comp.push_back(w);
                    } while (w != v);
                    std::sort(comp.begin(), comp.end());
                    components.push_back(std::move(comp));
                }
            }
        }
    }

    // Order components by smallest member; that also makes giant-tie-breaking
    // (prefer the smallest node id) fall out of a plain scan.
    std::sort(components.begin(), components.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });

    SccPartition part;
    part.components = std::move(components);
    part.component_of = std::move(component_of);
    int giant = -1;
    for (int i = 0; i < static_cast<int>(part.components.size()); ++i) {
        for (int v : part.components[i])
            part.component_of[v] = i;
        if (giant < 0 || part.components[i].size() > part.components[giant].size())
            giant = i;
    }
    part.giant_index = giant;
    return part;
}

bool is_strongly_connected(const DiGraph& g) {
    if (g.node_count() == 0)
        return false;
    return strongly_connected_components(g).components.size() == 1;
}

GiantSubgraph giant_scc_subgraph(const DiGraph& g) {
    SccPartition part = strongly_connected_components(g);
    if (part.giant_index < 0)
        throw TopologyError("graph has no nodes");
    const std::vector<int>& keep = part.components[part.giant_index];

    GiantSubgraph sub;
    sub.old_to_new.assign(g.node_count() + 1, 0);
    sub.new_to_old.assign(keep.size() + 1, 0);
    for (int i = 0; i < static_cast<int>(keep.size()); ++i) {
        sub.old_to_new[keep[i]] = i + 1;
        sub.new_to_old[i + 1] = keep[i];
    }

    std::vector<Arc> arcs;
    std::vector<double> weights;
    for (int k = 0; k < g.arc_count(); ++k) {
        const Arc& a = g.arcs()[k];
        int t = sub.old_to_new[a.tail];
        int h = sub.old_to_new[a.head];
        if (t != 0 && h != 0) {
            arcs.push_back({t, h});
            weights.push_back(g.weights()[k]);
        }
    }
    sub.graph = DiGraph::from_arcs(static_cast<int>(keep.size()), std::move(arcs),
                                   std::move(weights));
    return sub;
}

std::string to_dot(const DiGraph& g, double highlight_tol) {
    std::string out = "digraph {\n";
    char buf[160];
    for (int k = 0; k < g.arc_count(); ++k) {
        const Arc& a = g.arcs()[k];
        double w = g.weights()[k];
        bool hot = highlight_tol >= 0.0 && std::abs(w - 1.0) > highlight_tol;
        std::snprintf(buf, sizeof buf, "  %d -> %d [label=\"%.4f\"%s];\n", a.tail, a.head, w,
                      hot ? ", color=\"red\"" : "");
        out += buf;
    }
    out += "}\n";
    return out;
}

} // namespace icx
