#include "icx/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "icx/errors.hpp"

namespace icx {

namespace {

struct RowStats {
    double total = 0.0;   // sum of coefficients
    double total_sq = 0.0;
    double cmin = std::numeric_limits<double>::infinity();
    double cmax = 0.0;
};

// Margin for "coefficient overshoots the row" decisions. Must match the
// P5 solver's mandatory-node rule, or the lower bound can disagree with the
// solver on rows where c_i equals rho c_j to the last bit (the swapped
// 8-node instance has such a row).
double zero_row_tol(double rhs) { return 1e-9 * std::max(1.0, std::abs(rhs)); }

RowStats row_stats(const InverseSystem& sys, int j) {
    RowStats r;
    for (const RowEntry& e : sys.rows[j]) {
        r.total += e.coeff;
        r.total_sq += e.coeff * e.coeff;
        r.cmin = std::min(r.cmin, e.coeff);
        r.cmax = std::max(r.cmax, e.coeff);
    }
    return r;
}

} // namespace

LemmaBounds lemma_bounds(const InverseSystem& sys) {
    LemmaBounds b;
    const int n = sys.node_count();
    b.arc_cap.assign(sys.arc_count(), 0.0);
    b.in_sum_lo.assign(n + 1, 0.0);
    b.in_sum_hi.assign(n + 1, 0.0);
    for (int j = 1; j <= n; ++j) {
        RowStats st = row_stats(sys, j);
        b.in_sum_lo[j] = sys.rhs[j] / st.cmax;
        b.in_sum_hi[j] = sys.rhs[j] / st.cmin;
        for (const RowEntry& e : sys.rows[j])
            b.arc_cap[e.arc] = sys.rhs[j] / e.coeff;
    }
    return b;
}

ObjectiveInterval objective_bounds(const InverseSystem& sys, Problem p,
                                   const std::vector<double>* beta) {
    if (beta && beta->size() != static_cast<std::size_t>(sys.arc_count()))
        throw ValidationError("beta must have one entry per arc");
    const int n = sys.node_count();
    ObjectiveInterval out;
    switch (p) {
    case Problem::P1: {
        // Moving the row sum by |Delta_j| costs at least |Delta_j| / cmax in
        // l1; each single weight can stray by at most max(1, cap - 1).
        double lo = 0.0, hi = 0.0;
        for (int j = 1; j <= n; ++j) {
            RowStats st = row_stats(sys, j);
            lo += std::abs(sys.rhs[j] - st.total) / st.cmax;
            for (const RowEntry& e : sys.rows[j])
                hi += std::max(1.0, sys.rhs[j] / e.coeff - 1.0);
        }
        out.lower = lo;
        out.upper = hi;
        break;
    }
    case Problem::P2: {
        // Cauchy-Schwarz on each row for the floor; the cap plus
        // sum w^2 <= (sum w)^2 for the ceiling.
        double lo = 0.0, hi = static_cast<double>(sys.arc_count());
        for (int j = 1; j <= n; ++j) {
            RowStats st = row_stats(sys, j);
            double delta = sys.rhs[j] - st.total;
            lo += delta * delta / st.total_sq;
            double smax = sys.rhs[j] / st.cmin; // largest possible in-sum
            double smin = sys.rhs[j] / st.cmax; // smallest possible in-sum
            hi += smax * smax - 2.0 * smin;
        }
        out.lower = lo;
        out.upper = hi;
        break;
    }
    case Problem::P3: {
        double lo = 0.0, hi = 1.0;
        for (int j = 1; j <= n; ++j) {
            RowStats st = row_stats(sys, j);
            lo = std::max(lo, std::abs(sys.rhs[j] - st.total) / st.total);
            for (const RowEntry& e : sys.rows[j])
                hi = std::max(hi, sys.rhs[j] / e.coeff - 1.0);
        }
        out.lower = lo;
        out.upper = hi;
        break;
    }
    case Problem::P4: {
        // Each row's cost sum(beta w) is pinched between its in-sum identity
        // scaled by the extreme beta/c ratios of the row.
        double lo = 0.0, hi = 0.0;
        for (int j = 1; j <= n; ++j) {
            double rmin = std::numeric_limits<double>::infinity();
            double rmax = 0.0;
            for (const RowEntry& e : sys.rows[j]) {
                double ratio = (beta ? (*beta)[e.arc] : 1.0) / e.coeff;
                rmin = std::min(rmin, ratio);
                rmax = std::max(rmax, ratio);
            }
            lo += sys.rhs[j] * rmin;
            hi += sys.rhs[j] * rmax;
        }
        out.lower = lo;
        out.upper = hi;
        break;
    }
    case Problem::P5: {
        // Every tail whose own coefficient overshoots some row it feeds must
        // move that row's arcs; at worst all n nodes move.
        std::vector<char> forced(n + 1, 0);
        for (int j = 1; j <= n; ++j)
            for (const RowEntry& e : sys.rows[j])
                if (e.coeff > sys.rhs[j] + zero_row_tol(sys.rhs[j]))
                    forced[e.tail] = 1;
        int lo = 0;
        for (int v = 1; v <= n; ++v)
            lo += forced[v];
        out.lower = lo;
        out.upper = static_cast<double>(n);
        break;
    }
    case Problem::P6:
        out.lower = 0.0;
        out.upper = static_cast<double>(sys.arc_count());
        out.trivial = true;
        break;
    }
    return out;
}

BoundsReport bounds_report(const InverseSystem& sys, const std::vector<double>* beta) {
    BoundsReport rep;
    rep.lemma = lemma_bounds(sys);
    for (Problem p : kAllProblems)
        rep.objective[static_cast<int>(p)] = objective_bounds(sys, p, beta);
    return rep;
}

} // namespace icx
