#include "icx/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "icx/errors.hpp"

namespace icx {

namespace {

void check_spec_shape(const DiGraph& g, const CentralitySpec& spec) {
    const int n = g.node_count();
    if (static_cast<int>(spec.c.size()) != n + 1)
        throw ValidationError("centrality vector must have one entry per node");
    for (int j = 1; j <= n; ++j) {
        if (!std::isfinite(spec.c[j]) || spec.c[j] <= 0.0)
            throw ValidationError("centrality scores must be finite and positive");
    }
    if (!std::isfinite(spec.rho) || spec.rho <= 0.0)
        throw ValidationError("rho must be finite and positive");
}

} // namespace

double epsilon_max(const DiGraph& g, const std::vector<double>& c, double rho) {
    const int n = g.node_count();
    if (static_cast<int>(c.size()) != n + 1)
        throw ValidationError("centrality vector must have one entry per node");
    double emax = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= n; ++j) {
        const auto& bs = g.back_star(j);
        if (bs.empty())
            throw InfeasibleError(j, "node " + std::to_string(j) +
                                         " has no incoming arc; its score cannot be realised");
        double denom = 0.0;
        for (int i : bs)
            denom += c[i];
        emax = std::min(emax, rho * c[j] / denom);
    }
    return emax;
}

double big_m_value(const std::vector<double>& c, double rho) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t j = 1; j < c.size(); ++j) {
        lo = std::min(lo, c[j]);
        hi = std::max(hi, c[j]);
    }
    return rho * hi / lo - 1.0;
}

InverseSystem build_system(const DiGraph& g, CentralitySpec spec) {
    check_spec_shape(g, spec);
    if (!std::isfinite(spec.epsilon) || spec.epsilon <= 0.0)
        throw ValidationError("epsilon must be finite and positive");

    const double emax = epsilon_max(g, spec.c, spec.rho); // also rejects empty back-stars
    if (spec.epsilon >= emax)
        throw EpsilonError(emax, "epsilon " + std::to_string(spec.epsilon) +
                                     " is not admissible; it must be below " +
                                     std::to_string(emax));

    InverseSystem sys;
    sys.big_m = big_m_value(spec.c, spec.rho);
    const int n = g.node_count();
    sys.rows.assign(n + 1, {});
    sys.rhs.assign(n + 1, 0.0);
    for (int j = 1; j <= n; ++j) {
        sys.rhs[j] = spec.rho * spec.c[j];
        for (int k : g.in_arcs(j))
            sys.rows[j].push_back({k, g.arcs()[k].tail, spec.c[g.arcs()[k].tail]});
    }
    sys.graph = g;
    sys.spec = std::move(spec);
    return sys;
}

std::vector<double> feasible_point(const InverseSystem& sys) {
    std::vector<double> w(sys.arc_count(), 1.0);
    for (int j = 1; j <= sys.node_count(); ++j) {
        double denom = 0.0;
        for (const RowEntry& e : sys.rows[j])
            denom += e.coeff;
        double t = sys.rhs[j] / denom;
        for (const RowEntry& e : sys.rows[j])
            w[e.arc] = t;
    }
    return w;
}

double residual_inf(const InverseSystem& sys, const std::vector<double>& w) {
    if (w.size() != static_cast<std::size_t>(sys.arc_count()))
        throw ValidationError("weight vector does not match arc count");
    double res = 0.0;
    for (int j = 1; j <= sys.node_count(); ++j) {
        double lhs = 0.0;
        for (const RowEntry& e : sys.rows[j])
            lhs += e.coeff * w[e.arc];
        res = std::max(res, std::abs(lhs - sys.rhs[j]));
    }
    return res;
}

} // namespace icx
