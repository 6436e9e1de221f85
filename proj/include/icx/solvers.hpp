#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "icx/inverse.hpp"

namespace icx {

/// The six optimality criteria ranking points of the feasible set
/// {w : B w = rho c, w >= epsilon}:
///   P1  smallest l1 distance from unit weights
///   P2  smallest squared l2 distance from unit weights
///   P3  smallest maximum deviation from unit weights
///   P4  smallest cost sum(beta_k w_k)
///   P5  fewest nodes whose out-arcs change at all
///   P6  fewest changed arcs
enum class Problem { P1, P2, P3, P4, P5, P6 };

inline constexpr std::array<Problem, 6> kAllProblems = {Problem::P1, Problem::P2, Problem::P3,
                                                        Problem::P4, Problem::P5, Problem::P6};

const char* to_string(Problem p);
std::optional<Problem> problem_from_string(const std::string& s); // "p1".."P6"

/// A weight counts as moved off unit when |w - 1| > kUnitTol; used when
/// counting changed arcs / touched nodes in a given vector and when
/// highlighting arcs on export.
inline constexpr double kUnitTol = 1e-6;

struct WeightSolution {
    Problem problem = Problem::P1;
    std::vector<double> w; // arc order
    double objective = 0.0;
    double residual = 0.0;         // max_j |row_j(w) - rho c_j|
    std::vector<int> active_nodes; // P5: optimal support, ascending node ids
    std::vector<int> changed_arcs; // P6: arcs moved off unit, ascending arc indices
    long nodes_explored = 0;       // P5: search tree size
};

// The per-node solvers. Every row of B touches a disjoint set of weights, so
// P1-P4 and P6 split into independent one-row subproblems solved in closed
// form; only P5 couples rows (a node's activity is shared by all its
// out-arcs) and needs a search.
WeightSolution solve_p1(const InverseSystem& sys);
WeightSolution solve_p2(const InverseSystem& sys);
WeightSolution solve_p3(const InverseSystem& sys);
WeightSolution solve_p4(const InverseSystem& sys, const std::vector<double>& beta);
WeightSolution solve_p5(const InverseSystem& sys);
WeightSolution solve_p6(const InverseSystem& sys);

/// Dispatch by tag. beta is read only for P4; null means beta == 1.
WeightSolution solve(const InverseSystem& sys, Problem p,
                     const std::vector<double>* beta = nullptr);

/// Criterion `p` evaluated at an arbitrary weight vector (it need not be
/// feasible). P5/P6 count with kUnitTol. beta as in solve().
double evaluate_objective(const InverseSystem& sys, Problem p, const std::vector<double>& w,
                          const std::vector<double>* beta = nullptr);

/// Reference optima by exhaustion, for cross-checking the fast paths.
/// p5_brute_force enumerates all 2^n supports (rejects n > 12);
/// p6_brute_force enumerates kept-arc subsets row by row (rejects graphs
/// with more than 64 arcs or a back-star wider than 24).
int p5_brute_force(const InverseSystem& sys);
int p6_brute_force(const InverseSystem& sys);

} // namespace icx
