#pragma once

#include <vector>

#include "icx/graph.hpp"

namespace icx {

/// Output of the forward pass: spectral radius and the left Perron vector of
/// the weighted adjacency matrix, normalised to sum 1.
struct CentralityResult {
    double rho = 0.0;
    std::vector<double> c; // size n+1, slot 0 unused; c > 0, sum(c) == 1
    long iterations = 0;
    double residual = 0.0; // max_j |sum_{i in BS(j)} w_ij c_i - rho c_j|
};

struct PowerOptions {
    double tol = 1e-12;
    long max_iter = 1'000'000;
    /// Optional starting vector (size n+1, positive); empty means uniform.
    std::vector<double> start;
};

/// Power iteration on A^T with l1 normalisation. Requires a strongly
/// connected graph with positive weights, which makes the dominant pair
/// unique up to scale. If the plain iteration stalls on an oscillation
/// (periodic adjacency structure), the loop restarts on A^T + I, whose
/// dominant eigenvalue is rho + 1 with the same eigenvector, and the shift
/// is subtracted from the reported rho. Throws ConvergenceError if the
/// residual never reaches `tol` within `max_iter` steps.
CentralityResult power_iteration(const DiGraph& g, const PowerOptions& opt = {});

/// Residual check of the eigen-equation for a given weighted graph and a
/// proposed pair (rho, c). Does not require convergence machinery; it just
/// evaluates |A_w^T c - rho c| per node.
struct RealizationReport {
    double residual_inf = 0.0;
    std::vector<double> per_node; // size n+1, slot 0 unused
    bool pass = false;            // residual_inf <= tol
};

RealizationReport verify_realization(const DiGraph& g, const std::vector<double>& c,
                                     double rho, double tol = 1e-8);

} // namespace icx
