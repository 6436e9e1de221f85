#pragma once

#include <array>
#include <vector>

#include "icx/solvers.hpp"

namespace icx {

/// Per-arc and per-node consequences of B w = rho c with w >= epsilon:
/// each weight is trapped in [epsilon, rho c_head / c_tail], and the total
/// in-weight of node j lies between rho c_j / max(c) and rho c_j / min(c)
/// over its back-star.
struct LemmaBounds {
    std::vector<double> arc_cap;    // per arc, rho c_head / c_tail
    std::vector<double> in_sum_lo;  // size n+1
    std::vector<double> in_sum_hi;  // size n+1
};

LemmaBounds lemma_bounds(const InverseSystem& sys);

/// A priori interval for the optimal objective value of one criterion,
/// computable without solving. For P6 no useful a priori bound is known,
/// so its interval is the trivial [0, m] and `trivial` is set.
struct ObjectiveInterval {
    double lower = 0.0;
    double upper = 0.0;
    bool trivial = false;
};

ObjectiveInterval objective_bounds(const InverseSystem& sys, Problem p,
                                   const std::vector<double>* beta = nullptr);

/// All six intervals plus the lemma data in one shot.
struct BoundsReport {
    LemmaBounds lemma;
    std::array<ObjectiveInterval, 6> objective; // indexed by Problem
};

BoundsReport bounds_report(const InverseSystem& sys, const std::vector<double>* beta = nullptr);

} // namespace icx
