#include "icx/solvers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include "icx/errors.hpp"

namespace icx {

const char* to_string(Problem p) {
    switch (p) {
    case Problem::P1: return "P1";
    case Problem::P2: return "P2";
    case Problem::P3: return "P3";
    case Problem::P4: return "P4";
    case Problem::P5: return "P5";
    case Problem::P6: return "P6";
    }
    return "?";
}

std::optional<Problem> problem_from_string(const std::string& s) {
    if (s.size() == 2 && (s[0] == 'p' || s[0] == 'P') && s[1] >= '1' && s[1] <= '6')
        return static_cast<Problem>(s[1] - '1');
    return std::nullopt;
}

namespace {

// ---- shared row helpers ------------------------------------------------

double row_total(const InverseSystem& sys, int j) {
    double t = 0.0;
    for (const RowEntry& e : sys.rows[j])
        t += e.coeff;
    return t;
}

// Tolerance of the exact-data equality branches: these only have to absorb
// float noise, the data itself is exact there.
bool nearly_equal(double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

// Tolerance for "this row needs no active tail at all" (P5): its imbalance
// rho c_j - sum c_i must vanish. Relative to the row scale so that scaling
// c does not change the verdict.
double zero_row_tol(double rhs) { return 1e-9 * std::max(1.0, std::abs(rhs)); }

// Entry order sorted by descending coefficient, ties by ascending arc index.
std::vector<int> by_coeff_desc(const std::vector<RowEntry>& row) {
    std::vector<int> idx(row.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (row[a].coeff != row[b].coeff) return row[a].coeff > row[b].coeff;
        return row[a].arc < row[b].arc;
    });
    return idx;
}

std::vector<int> by_coeff_asc(const std::vector<RowEntry>& row) {
    std::vector<int> idx(row.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (row[a].coeff != row[b].coeff) return row[a].coeff < row[b].coeff;
        return row[a].arc < row[b].arc;
    });
    return idx;
}

void finish(const InverseSystem& sys, WeightSolution& s) {
    s.residual = residual_inf(sys, s.w);
}

double sum_abs_dev(const std::vector<double>& w) {
    double o = 0.0;
    for (double x : w)
        o += std::abs(x - 1.0);
    return o;
}

} // namespace

// ---- P1: smallest l1 move ----------------------------------------------
//
// Per row, a unit of |w_i - 1| shifts the row sum by c_i, so the cheapest
// correction spends the whole imbalance on the largest coefficients. An
// upward imbalance goes onto one arc (no cap); a downward one walks the
// coefficients in descending order, each arc absorbing at most c_i (1 - eps)
// before it hits the floor.
WeightSolution solve_p1(const InverseSystem& sys) {
    WeightSolution s;
    s.problem = Problem::P1;
    s.w.assign(sys.arc_count(), 1.0);
    const double eps = sys.epsilon();
    for (int j = 1; j <= sys.node_count(); ++j) {
        const auto& row = sys.rows[j];
        double delta = sys.rhs[j] - row_total(sys, j);
        if (delta == 0.0)
            continue;
        std::vector<int> idx = by_coeff_desc(row);
        if (delta > 0.0) {
            const RowEntry& e = row[idx.front()];
            s.w[e.arc] = 1.0 + delta / e.coeff;
        } else {
            double need = -delta; // < sum c_i (1 - eps) because eps < eps_max
            for (int t : idx) {
                const RowEntry& e = row[t];
                double cap = e.coeff * (1.0 - eps);
                if (need >= cap) {
                    s.w[e.arc] = eps;
                    need -= cap;
                } else {
                    s.w[e.arc] = 1.0 - need / e.coeff;
                    need = 0.0;
                }
                if (need == 0.0)
                    break;
            }
        }
    }
    s.objective = sum_abs_dev(s.w);
    finish(sys, s);
    return s;
}

// ---- P2: smallest squared l2 move --------------------------------------
//
// Stationarity gives w_i = max(eps, 1 + lambda c_i) with lambda matching the
// row sum. The row map lambda -> sum_i c_i w_i(lambda) is piecewise linear
// and nondecreasing, with knees where entries hit the floor, largest
// coefficient first as lambda decreases. Walking the knee count t upward and
// solving each linear piece finds the one whose lambda lies inside it.
WeightSolution solve_p2(const InverseSystem& sys) {
    WeightSolution s;
    s.problem = Problem::P2;
    s.w.assign(sys.arc_count(), 1.0);
    const double eps = sys.epsilon();
    for (int j = 1; j <= sys.node_count(); ++j) {
        const auto& row = sys.rows[j];
        const int k = static_cast<int>(row.size());
        std::vector<int> idx = by_coeff_desc(row);
        bool placed = false;
        double floored = 0.0; // sum of floored coefficients (the t largest)
        for (int t = 0; t < k && !placed; ++t) {
            double lin = 0.0, quad = 0.0;
            for (int r = t; r < k; ++r) {
                lin += row[idx[r]].coeff;
                quad += row[idx[r]].coeff * row[idx[r]].coeff;
            }
            double lambda = (sys.rhs[j] - eps * floored - lin) / quad;
            bool free_ok = 1.0 + lambda * row[idx[t]].coeff >= eps;
            bool floor_ok = t == 0 || 1.0 + lambda * row[idx[t - 1]].coeff <= eps;
            if (free_ok && floor_ok) {
                for (int r = 0; r < t; ++r)
                    s.w[row[idx[r]].arc] = eps;
                for (int r = t; r < k; ++r)
                    s.w[row[idx[r]].arc] = std::max(eps, 1.0 + lambda * row[idx[r]].coeff);
                placed = true;
            }
            floored += row[idx[t]].coeff;
        }
        if (!placed)
            throw std::logic_error("quadratic row solve found no valid segment");
    }
    double obj = 0.0;
    for (double x : s.w)
        obj += (x - 1.0) * (x - 1.0);
    s.objective = obj;
    finish(sys, s);
    return s;
}

// ---- P3: smallest worst-case move --------------------------------------
//
// In any row, max_i |w_i - 1| >= |rho c_j - sum c_i| / sum c_i, and the
// uniform fill w_i = rho c_j / sum c_i attains that, so the uniform fill per
// row is optimal for the global max as well.
WeightSolution solve_p3(const InverseSystem& sys) {
    WeightSolution s;
    s.problem = Problem::P3;
    s.w = feasible_point(sys);
    double obj = 0.0;
    for (double x : s.w)
        obj = std::max(obj, std::abs(x - 1.0));
    s.objective = obj;
    finish(sys, s);
    return s;
}

// ---- P4: cheapest weights under a per-arc price ------------------------
//
// Linear objective over a bounded polytope whose vertices put every arc of a
// row except one at the floor; the row cost at such a vertex is
// eps sum(beta) + (beta_i / c_i)(rho c_j - eps sum c), so the free arc is
// the one with the smallest beta/c ratio.
WeightSolution solve_p4(const InverseSystem& sys, const std::vector<double>& beta) {
    if (beta.size() != static_cast<std::size_t>(sys.arc_count()))
        throw ValidationError("beta must have one entry per arc");
    for (double b : beta) {
        if (!std::isfinite(b) || b <= 0.0)
            throw ValidationError("beta entries must be finite and positive");
    }
    WeightSolution s;
    s.problem = Problem::P4;
    s.w.assign(sys.arc_count(), 0.0);
    const double eps = sys.epsilon();
    for (int j = 1; j <= sys.node_count(); ++j) {
        const auto& row = sys.rows[j];
        int pivot = -1;
        double best = std::numeric_limits<double>::infinity();
        double total = 0.0;
        for (int t = 0; t < static_cast<int>(row.size()); ++t) {
            total += row[t].coeff;
            double ratio = beta[row[t].arc] / row[t].coeff;
            if (ratio < best) {
                best = ratio;
                pivot = t;
            }
        }
        for (int t = 0; t < static_cast<int>(row.size()); ++t)
            s.w[row[t].arc] = eps;
        s.w[row[pivot].arc] = (sys.rhs[j] - eps * (total - row[pivot].coeff)) / row[pivot].coeff;
    }
    double obj = 0.0;
    for (int k = 0; k < sys.arc_count(); ++k)
        obj += beta[k] * s.w[k];
    s.objective = obj;
    finish(sys, s);
    return s;
}

// ---- P5: fewest touched nodes ------------------------------------------

namespace {

// Feasibility of a fully decided activity pattern (state[v]: 1 = active,
// anything else = inactive), with fresh row sums. The branch-and-bound leaf
// test and the exhaustive oracle both call this, so the two can never
// disagree on boundary arithmetic. A row with no active tail must already
// balance on its own; one with active tails needs its slack inside the box
// [eps sigma, (1 + M) sigma]. The upper side cannot fail on exact data
// (rho c_j / c_i <= 1 + M for every arc), so it carries a hair of slack
// against rounding on the knife edge where it is tight.
bool pattern_feasible(const InverseSystem& sys, const std::vector<std::int8_t>& state) {
    for (int j = 1; j <= sys.node_count(); ++j) {
        double sigma = 0.0, fixed = 0.0;
        for (const RowEntry& e : sys.rows[j])
            (state[e.tail] == 1 ? sigma : fixed) += e.coeff;
        double need = sys.rhs[j] - fixed;
        if (sigma == 0.0) {
            if (std::abs(need) > zero_row_tol(sys.rhs[j]))
                return false;
        } else {
            if (need < sys.epsilon() * sigma)
                return false;
            if (need > (1.0 + sys.big_m) * sigma * (1.0 + 1e-9))
                return false;
        }
    }
    return true;
}

struct P5Search {
    const InverseSystem& sys;
    std::vector<std::int8_t> state; // 0 undecided, 1 active, 2 inactive
    std::vector<double> fixed;      // per row: coefficient mass of inactive tails
    std::vector<char> dead;         // per row: fixed mass already overshoots
    std::vector<char> mandatory;    // node must be active in every feasible support
    std::vector<int> order;         // branch order over eligible nodes
    int dead_rows = 0;
    int active_count = 0;
    int best = std::numeric_limits<int>::max();
    long explored = 0;
    std::vector<int> result;

    explicit P5Search(const InverseSystem& s) : sys(s) {
        const int n = sys.node_count();
        state.assign(n + 1, 2); // nodes outside `order` stay inactive
        fixed.assign(n + 1, 0.0);
        dead.assign(n + 1, 0);
        mandatory.assign(n + 1, 0);

        // A tail with c_i > rho c_j (beyond tolerance) cannot sit inactive:
        // its unit weight alone overshoots row j, and inactive mass only adds.
        for (int j = 1; j <= n; ++j) {
            for (const RowEntry& e : sys.rows[j]) {
                if (e.coeff > sys.rhs[j] + zero_row_tol(sys.rhs[j]))
                    mandatory[e.tail] = 1;
            }
        }

        // Only nodes with out-arcs matter; an arcless node never helps a row,
        // so no minimal support contains one. Mandatory nodes are pre-set
        // active; the rest branch in descending out-degree order, ties by id.
        for (int v = 1; v <= n; ++v) {
            if (sys.graph.out_degree(v) == 0)
                continue;
            if (mandatory[v]) {
                state[v] = 1;
                ++active_count;
            } else {
                state[v] = 0;
                order.push_back(v);
            }
        }
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (sys.graph.out_degree(a) != sys.graph.out_degree(b))
                return sys.graph.out_degree(a) > sys.graph.out_degree(b);
            return a < b;
        });
    }

    bool is_dead(int j) const { return fixed[j] > sys.rhs[j] + zero_row_tol(sys.rhs[j]); }

    // Mark v inactive, adding its coefficient to every row it enters.
    // Returns the exact previous row masses so undo() cannot drift.
    std::vector<std::pair<int, double>> make_inactive(int v) {
        std::vector<std::pair<int, double>> saved;
        state[v] = 2;
        for (int k : sys.graph.out_arcs(v)) {
            int j = sys.graph.arcs()[k].head;
            saved.emplace_back(j, fixed[j]);
            fixed[j] += sys.spec.c[v];
            if (!dead[j] && is_dead(j)) {
                dead[j] = 1;
                ++dead_rows;
            }
        }
        return saved;
    }

    void undo_inactive(int v, const std::vector<std::pair<int, double>>& saved) {
        for (auto it = saved.rbegin(); it != saved.rend(); ++it) {
            fixed[it->first] = it->second;
            if (dead[it->first] && !is_dead(it->first)) {
                dead[it->first] = 0;
                --dead_rows;
            }
        }
        state[v] = 0;
    }

    void dfs(std::size_t depth) {
        ++explored;
        if (active_count >= best || dead_rows > 0)
            return;
        if (depth == order.size()) {
            if (pattern_feasible(sys, state))
                best = active_count;
            return;
        }
        int v = order[depth];
        auto saved = make_inactive(v);
        dfs(depth + 1);
        undo_inactive(v, saved);
        if (active_count + 1 < best) {
            state[v] = 1;
            ++active_count;
            dfs(depth + 1);
            --active_count;
            state[v] = 0;
        }
    }

    // Among supports of the optimal size, pick the lexicographically
    // smallest: include candidates in ascending id order, include-first.
    bool lex(int v, int remaining) {
        ++explored;
        if (dead_rows > 0)
            return false;
        const int n = sys.node_count();
        while (v <= n && state[v] != 0)
            ++v;
        if (remaining == 0) {
            std::vector<std::pair<int, std::vector<std::pair<int, double>>>> trail;
            bool wedged = false;
            for (int u = v; u <= n && !wedged; ++u) {
                if (state[u] != 0)
                    continue;
                trail.emplace_back(u, make_inactive(u));
                wedged = dead_rows > 0;
            }
            bool ok = !wedged && pattern_feasible(sys, state);
            if (ok) {
                for (int u = 1; u <= n; ++u)
                    if (state[u] == 1)
                        result.push_back(u);
            }
            for (auto it = trail.rbegin(); it != trail.rend(); ++it)
                undo_inactive(it->first, it->second);
            return ok;
        }
        int undecided = 0;
        for (int u = v; u <= n; ++u)
            if (state[u] == 0)
                ++undecided;
        if (undecided < remaining)
            return false;
        state[v] = 1;
        ++active_count;
        bool found = lex(v + 1, remaining - 1);
        --active_count;
        state[v] = 0;
        if (found)
            return true;
        auto saved = make_inactive(v);
        found = lex(v + 1, remaining);
        undo_inactive(v, saved);
        return found;
    }
};

} // namespace

// The only criterion whose rows interact: a node's activity is one decision
// shared by all its out-arcs. Branch and bound over node activity finds the
// optimal count, then a second sweep picks the lexicographically smallest
// support of that size, and the witness fills each row uniformly over its
// active tails.
WeightSolution solve_p5(const InverseSystem& sys) {
    P5Search search(sys);
    search.dfs(0);
    if (search.best == std::numeric_limits<int>::max())
        throw std::logic_error("no feasible support found; the all-active support must be feasible");

    const int seeded = search.active_count; // mandatory nodes stay active
    search.lex(1, search.best - seeded);
    if (static_cast<int>(search.result.size()) != search.best)
        throw std::logic_error("support reconstruction lost the optimum");

    WeightSolution s;
    s.problem = Problem::P5;
    s.active_nodes = search.result;
    s.nodes_explored = search.explored;
    s.objective = static_cast<double>(search.best);
    s.w.assign(sys.arc_count(), 1.0);
    std::vector<char> active(sys.node_count() + 1, 0);
    for (int v : s.active_nodes)
        active[v] = 1;
    for (int j = 1; j <= sys.node_count(); ++j) {
        double sigma = 0.0, fixedm = 0.0;
        for (const RowEntry& e : sys.rows[j])
            (active[e.tail] ? sigma : fixedm) += e.coeff;
        if (sigma == 0.0)
            continue;
        double t = (sys.rhs[j] - fixedm) / sigma;
        for (const RowEntry& e : sys.rows[j])
            if (active[e.tail])
                s.w[e.arc] = t;
    }
    finish(sys, s);
    return s;
}

int p5_brute_force(const InverseSystem& sys) {
    const int n = sys.node_count();
    if (n > 12)
        throw std::invalid_argument("p5_brute_force is limited to 12 nodes");
    std::vector<std::int8_t> state(n + 1, 2);
    int best = std::numeric_limits<int>::max();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        int size = std::popcount(mask);
        if (size >= best)
            continue;
        for (int v = 1; v <= n; ++v)
            state[v] = (mask >> (v - 1)) & 1u ? 1 : 2;
        if (pattern_feasible(sys, state))
            best = size;
    }
    return best; // all-active is always feasible, so best < INT_MAX
}

// ---- P6: fewest changed arcs --------------------------------------------

namespace {

// Kept-arc count of one row: the largest h such that pinning the h smallest
// coefficients to weight 1 leaves the rest enough room above the floor.
// Rows that already balance keep everything. h never reaches k otherwise,
// because an exactly filled complement of size zero cannot absorb a nonzero
// imbalance. In the witness, the unpinned arc right after the kept prefix
// carries the balance and any arcs beyond it sit on the floor.
struct P6Row {
    int kept = 0;
    std::vector<int> sorted; // entry order by ascending coefficient
    double balance = 0.0;    // weight of the arc at position `kept`
    bool exact = false;
};

P6Row p6_row(const InverseSystem& sys, int j) {
    const auto& row = sys.rows[j];
    const int k = static_cast<int>(row.size());
    P6Row r;
    if (nearly_equal(sys.rhs[j], row_total(sys, j))) {
        r.kept = k;
        r.exact = true;
        return r;
    }
    r.sorted = by_coeff_asc(row);
    std::vector<double> prefix(k + 1, 0.0);
    for (int t = 0; t < k; ++t)
        prefix[t + 1] = prefix[t] + row[r.sorted[t]].coeff;
    const double total = prefix[k];
    const double eps = sys.epsilon();
    for (int h = k - 1; h >= 0; --h) {
        if ((1.0 - eps) * prefix[h] + eps * total <= sys.rhs[j]) {
            r.kept = h;
            double floor_mass = total - prefix[h + 1]; // arcs past the balancer
            r.balance = (sys.rhs[j] - prefix[h] - eps * floor_mass) / row[r.sorted[h]].coeff;
            break;
        }
    }
    return r;
}

} // namespace

WeightSolution solve_p6(const InverseSystem& sys) {
    WeightSolution s;
    s.problem = Problem::P6;
    s.w.assign(sys.arc_count(), 1.0);
    const double eps = sys.epsilon();
    int changed = 0;
    for (int j = 1; j <= sys.node_count(); ++j) {
        P6Row r = p6_row(sys, j);
        if (r.exact)
            continue;
        const auto& row = sys.rows[j];
        const int k = static_cast<int>(row.size());
        for (int t = r.kept; t < k; ++t) {
            int arc = row[r.sorted[t]].arc;
            s.w[arc] = t == r.kept ? std::max(eps, r.balance) : eps;
            s.changed_arcs.push_back(arc);
        }
        changed += k - r.kept;
    }
    std::sort(s.changed_arcs.begin(), s.changed_arcs.end());
    s.objective = static_cast<double>(changed);
    finish(sys, s);
    return s;
}

int p6_brute_force(const InverseSystem& sys) {
    if (sys.arc_count() > 64)
        throw std::invalid_argument("p6_brute_force is limited to 64 arcs");
    const double eps = sys.epsilon();
    int kept_total = 0;
    for (int j = 1; j <= sys.node_count(); ++j) {
        const auto& row = sys.rows[j];
        const int k = static_cast<int>(row.size());
        if (k > 24)
            throw std::invalid_argument("p6_brute_force is limited to back-stars of 24 arcs");
        if (nearly_equal(sys.rhs[j], row_total(sys, j))) {
            kept_total += k;
            continue;
        }
        int best = 0;
        for (std::uint32_t mask = 0; mask + 1 < (1u << k); ++mask) { // skip the full set
            int size = std::popcount(mask);
            if (size <= best)
                continue;
            double pinned = 0.0, comp = 0.0;
            for (int t = 0; t < k; ++t)
                ((mask >> t) & 1u ? pinned : comp) += row[t].coeff;
            double need = sys.rhs[j] - pinned;
            if (need >= eps * comp && need <= (1.0 + sys.big_m) * comp * (1.0 + 1e-9))
                best = size;
        }
        kept_total += best;
    }
    return sys.arc_count() - kept_total;
}

// ---- dispatch and evaluation --------------------------------------------

WeightSolution solve(const InverseSystem& sys, Problem p, const std::vector<double>* beta) {
    switch (p) {
    case Problem::P1: return solve_p1(sys);
    case Problem::P2: return solve_p2(sys);
    case Problem::P3: return solve_p3(sys);
    case Problem::P4: {
        if (beta)
            return solve_p4(sys, *beta);
        return solve_p4(sys, std::vector<double>(sys.arc_count(), 1.0));
    }
    case Problem::P5: return solve_p5(sys);
    case Problem::P6: return solve_p6(sys);
    }
    throw std::invalid_argument("unknown problem tag");
}

double evaluate_objective(const InverseSystem& sys, Problem p, const std::vector<double>& w,
                          const std::vector<double>* beta) {
    if (w.size() != static_cast<std::size_t>(sys.arc_count()))
        throw ValidationError("weight vector does not match arc count");
    switch (p) {
    case Problem::P1:
        return sum_abs_dev(w);
    case Problem::P2: {
        double o = 0.0;
        for (double x : w)
            o += (x - 1.0) * (x - 1.0);
        return o;
    }
    case Problem::P3: {
        double o = 0.0;
        for (double x : w)
            o = std::max(o, std::abs(x - 1.0));
        return o;
    }
    case Problem::P4: {
        double o = 0.0;
        for (int k = 0; k < sys.arc_count(); ++k)
            o += (beta ? (*beta)[k] : 1.0) * w[k];
        return o;
    }
    case Problem::P5: {
        int count = 0;
        for (int v = 1; v <= sys.node_count(); ++v) {
            for (int k : sys.graph.out_arcs(v)) {
                if (std::abs(w[k] - 1.0) > kUnitTol) {
                    ++count;
                    break;
                }
            }
        }
        return count;
    }
    case Problem::P6: {
        int count = 0;
        for (double x : w)
            if (std::abs(x - 1.0) > kUnitTol)
                ++count;
        return count;
    }
    }
    throw std::invalid_argument("unknown problem tag");
}

} // namespace icx
