#pragma once

#include <vector>

#include "icx/graph.hpp"

namespace icx {

/// Target of the inverse problem: prescribed centrality scores and spectral
/// radius, plus the floor every arc weight must stay above.
struct CentralitySpec {
    std::vector<double> c; // size n+1, slot 0 unused; strictly positive
    double rho = 0.0;
    double epsilon = 1e-3;
};

/// One coefficient of a constraint row: arc index, its tail i, and c_i.
struct RowEntry {
    int arc = 0;
    int tail = 0;
    double coeff = 0.0;
};

/// The linear system B w = rho c with the floor w >= epsilon, fixed for one
/// (graph, spec) pair. Row j couples exactly the weights of the arcs entering
/// node j, with coefficients c_i for tails i; rows therefore share no
/// variables, and every weight appears in exactly one row.
struct InverseSystem {
    DiGraph graph;
    CentralitySpec spec;
    std::vector<std::vector<RowEntry>> rows; // size n+1; rows[j] in ascending arc order
    std::vector<double> rhs;                 // size n+1; rhs[j] = rho * c_j
    double big_m = 0.0;                      // rho * max(c) / min(c) - 1

    int node_count() const { return graph.node_count(); }
    int arc_count() const { return graph.arc_count(); }
    double epsilon() const { return spec.epsilon; }
};

/// Largest admissible floor for the pair (rho, c) on this graph:
/// min_j rho c_j / sum_{i in BS(j)} c_i. Every epsilon strictly below this
/// keeps all rows satisfiable with weights >= epsilon.
double epsilon_max(const DiGraph& g, const std::vector<double>& c, double rho);

/// Box cap used by the combinatorial problems: rho * max(c) / min(c) - 1.
double big_m_value(const std::vector<double>& c, double rho);

/// Assemble the system. Throws InfeasibleError if some node has no incoming
/// arc (its row would be empty), EpsilonError if spec.epsilon >= epsilon_max,
/// and ValidationError on malformed inputs (size mismatch, c <= 0, rho <= 0,
/// epsilon <= 0).
InverseSystem build_system(const DiGraph& g, CentralitySpec spec);

/// One always-valid point of the feasible region: in each row, every weight
/// gets the same value rho c_j / sum_{i in BS(j)} c_i (>= epsilon by the
/// epsilon_max check, and <= 1 + big_m).
std::vector<double> feasible_point(const InverseSystem& sys);

/// max_j |sum_k B_jk w_k - rho c_j| for a candidate weight vector.
double residual_inf(const InverseSystem& sys, const std::vector<double>& w);

} // namespace icx
