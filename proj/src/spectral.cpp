#include "icx/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "icx/errors.hpp"

namespace icx {

namespace {

// y = (A^T + shift I) x over the arc list, i.e. y_j = sum_{i in BS(j)} w_ij x_i + shift x_j.
void apply(const DiGraph& g, double shift, const std::vector<double>& x, std::vector<double>& y) {
    const int n = g.node_count();
    for (int j = 1; j <= n; ++j)
        y[j] = shift * x[j];
    const auto& arcs = g.arcs();
    const auto& w = g.weights();
    for (int k = 0; k < g.arc_count(); ++k)
        y[arcs[k].head] += w[k] * x[arcs[k].tail];
}

struct IterationOutcome {
    bool converged = false;
    bool plateaued = false;
    double rho = 0.0;
    double residual = std::numeric_limits<double>::infinity();
    long iterations = 0;
};

// Run the normalised iteration with a diagonal shift. Plateau = the best
// residual seen has not improved by a relative 1e-14 over the last 100
// iterations; that distinguishes a genuine oscillation (periodic structure,
// residual bounded away from zero) from slow geometric convergence, which
// still improves every window.
IterationOutcome iterate(const DiGraph& g, double shift, std::vector<double>& x, double tol,
                         long max_iter, long already_used) {
    const int n = g.node_count();
    std::vector<double> y(n + 1, 0.0);

    IterationOutcome out;
    double best_residual = std::numeric_limits<double>::infinity();
    long best_iter = 0;

    for (long it = 1; already_used + it <= max_iter; ++it) {
        apply(g, shift, x, y);
        double norm = 0.0;
        for (int j = 1; j <= n; ++j)
            norm += y[j]; // entries stay positive, so this is the l1 norm
        for (int j = 1; j <= n; ++j)
            y[j] /= norm;

        // Residual of the shifted equation at the new iterate.
        apply(g, shift, y, x); // reuse x as scratch for A^T y
        double res = 0.0;
        double rayleigh = 0.0;
        for (int j = 1; j <= n; ++j)
            rayleigh += x[j]; // sum(A^T y) with sum(y) == 1
        for (int j = 1; j <= n; ++j)
            res = std::max(res, std::abs(x[j] - rayleigh * y[j]));
        x.swap(y);

        out.iterations = it;
        out.rho = rayleigh;
        out.residual = res;
        if (res <= tol) {
            out.converged = true;
            return out;
        }
        if (res < best_residual * (1.0 - 1e-14)) {
            best_residual = res;
            best_iter = it;
        } else if (it - best_iter >= 100) {
            out.plateaued = true;
            return out;
        }
    }
    return out;
}

} // namespace

CentralityResult power_iteration(const DiGraph& g, const PowerOptions& opt) {
    const int n = g.node_count();
    if (n == 0)
        throw ValidationError("power iteration on an empty graph");
    if (!is_strongly_connected(g))
        throw TopologyError("power iteration requires a strongly connected graph");

    std::vector<double> x;
    if (opt.start.empty()) {
        x.assign(n + 1, 1.0 / n);
        x[0] = 0.0;
    } else {
        if (static_cast<int>(opt.start.size()) != n + 1)
            throw ValidationError("starting vector must have one entry per node");
        double norm = 0.0;
        for (int j = 1; j <= n; ++j) {
            if (!(opt.start[j] > 0.0) || !std::isfinite(opt.start[j]))
                throw ValidationError("starting vector must be positive");
            norm += opt.start[j];
        }
        x = opt.start;
        x[0] = 0.0;
        for (int j = 1; j <= n; ++j)
            x[j] /= norm;
    }

    IterationOutcome plain = iterate(g, 0.0, x, opt.tol, opt.max_iter, 0);
    if (plain.converged) {
        CentralityResult r;
        r.rho = plain.rho;
        r.c = std::move(x);
        r.iterations = plain.iterations;
        r.residual = plain.residual;
        return r;
    }
    if (!plain.plateaued)
        throw ConvergenceError(plain.residual, plain.iterations,
                               "power iteration did not converge in " +
                                   std::to_string(opt.max_iter) + " iterations");

    // Oscillation: restart on the shifted matrix, whose iteration converges
    // for any irreducible nonnegative matrix. Residuals of the shifted and
    // unshifted equations coincide, so the same tolerance applies.
    const double shift = 1.0;
    IterationOutcome shifted = iterate(g, shift, x, opt.tol, opt.max_iter, plain.iterations);
    if (!shifted.converged)
        throw ConvergenceError(shifted.residual, plain.iterations + shifted.iterations,
                               "power iteration did not converge in " +
                                   std::to_string(opt.max_iter) + " iterations");
    CentralityResult r;
    r.rho = shifted.rho - shift;
    r.c = std::move(x);
    r.iterations = plain.iterations + shifted.iterations;
    r.residual = shifted.residual;
    return r;
}

RealizationReport verify_realization(const DiGraph& g, const std::vector<double>& c, double rho,
                                     double tol) {
    const int n = g.node_count();
    if (static_cast<int>(c.size()) != n + 1)
        throw ValidationError("centrality vector must have one entry per node");
    RealizationReport rep;
    rep.per_node.assign(n + 1, 0.0);
    for (int j = 1; j <= n; ++j)
        rep.per_node[j] = -rho * c[j];
    const auto& arcs = g.arcs();
    const auto& w = g.weights();
    for (int k = 0; k < g.arc_count(); ++k)
        rep.per_node[arcs[k].head] += w[k] * c[arcs[k].tail];
    for (int j = 1; j <= n; ++j) {
        rep.per_node[j] = std::abs(rep.per_node[j]);
        rep.residual_inf = std::max(rep.residual_inf, rep.per_node[j]);
    }
    rep.pass = rep.residual_inf <= tol;
    return rep;
}

} // namespace icx
