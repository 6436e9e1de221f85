#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace icx {

/// One directed arc (tail, head). Node ids are 1-based throughout.
struct Arc {
    int tail = 0;
    int head = 0;

    friend bool operator==(const Arc&, const Arc&) = default;
};

/// Weighted simple digraph, immutable after construction.
///
/// Conventions: node ids run 1..n (node-indexed vectors have size n+1 with
/// slot 0 unused); arcs are stored in row-major scan order of the adjacency
/// matrix, i.e. sorted by (tail, head), and arc indices are 0-based positions
/// in that order. Weight k belongs to arc k.
class DiGraph {
public:
    DiGraph() = default;

    /// Build from an arc list. Arcs may arrive in any order; they are sorted
    /// into row-major order and `weights` (if given) is permuted along.
    /// Throws ValidationError on self-loops, duplicate arcs, ids outside
    /// 1..n, or weights that are not finite and positive.
    /// An empty `weights` means every arc gets weight 1.
    static DiGraph from_arcs(int n, std::vector<Arc> arcs,
                             std::vector<double> weights = {});

    int node_count() const { return n_; }
    int arc_count() const { return static_cast<int>(arcs_.size()); }

    const std::vector<Arc>& arcs() const { return arcs_; }
    const std::vector<double>& weights() const { return weights_; }

    /// Copy of this graph with the same arcs but different weights.
    DiGraph with_weights(std::vector<double> weights) const;

    /// Tails of the arcs entering j, ascending. (The "back-star" of j.)
    const std::vector<int>& back_star(int j) const { return back_star_.at(j); }

    /// Arc indices entering j, in ascending tail order.
    const std::vector<int>& in_arcs(int j) const { return in_arcs_.at(j); }

    /// Arc indices leaving i, in ascending head order.
    const std::vector<int>& out_arcs(int i) const { return out_arcs_.at(i); }

    int in_degree(int j) const { return static_cast<int>(in_arcs_.at(j).size()); }
    int out_degree(int i) const { return static_cast<int>(out_arcs_.at(i).size()); }

    /// Index of arc (tail, head), or nullopt if absent. O(log out_degree).
    std::optional<int> find_arc(int tail, int head) const;

private:
    int n_ = 0;
    std::vector<Arc> arcs_;
    std::vector<double> weights_;
    std::vector<std::vector<int>> in_arcs_;   // size n+1
    std::vector<std::vector<int>> out_arcs_;  // size n+1
    std::vector<std::vector<int>> back_star_; // size n+1
};

/// Parse the plain edge-list format: one arc per line as
///   tail head [weight]
/// with '#' starting a comment that runs to end of line. Blank lines are
/// skipped. Node count is the largest id seen. A line with a weight and a
/// line without may mix; missing weights default to 1.
DiGraph parse_edge_list(std::istream& in);
DiGraph parse_edge_list(const std::string& text);
DiGraph load_edge_list(const std::filesystem::path& path);

/// Strongly connected components of a digraph.
struct SccPartition {
    /// Components as sorted node lists, ordered by their smallest node id.
    std::vector<std::vector<int>> components;
    /// component_of[v] is the index into `components` for node v (size n+1).
    std::vector<int> component_of;
    /// Index of a largest component (ties broken by smallest node id).
    int giant_index = -1;
};

SccPartition strongly_connected_components(const DiGraph& g);
bool is_strongly_connected(const DiGraph& g);

/// Restriction of a graph to its largest strongly connected component,
/// nodes relabelled 1..n' preserving ascending order of the original ids.
struct GiantSubgraph {
    DiGraph graph;
    std::vector<int> old_to_new; // size n+1; 0 where the node was dropped
    std::vector<int> new_to_old; // size n'+1
};

GiantSubgraph giant_scc_subgraph(const DiGraph& g);

/// GraphViz text for the weighted graph. Labels carry 4-decimal weights.
/// Arcs with |w - 1| > highlight_tol are drawn red; pass a negative
/// tolerance to disable highlighting.
std::string to_dot(const DiGraph& g, double highlight_tol = -1.0);

} // namespace icx
