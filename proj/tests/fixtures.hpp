#pragma once

// Shared fixtures: the two worked examples used across the suites, plus
// constants frozen from an independent numpy/scipy reference implementation
// (power iteration run to 1e-15, solvers cross-checked against linprog /
// SLSQP). Tests compare against these instead of recomputing them, so a
// regression in one module cannot silently re-derive itself into the
// expected values.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "icx/graph.hpp"
#include "icx/inverse.hpp"

namespace fixtures {

// 4-node ring with a chord: 1->2->3->4->1 plus 4->2.
inline const char* kGraph4 =
    "1 2\n"
    "2 3\n"
    "3 4\n"
    "4 1\n"
    "4 2\n";

// The 8-node strongly connected study graph (20 arcs, row-major order).
inline const char* kGraph8 =
    "1 2\n1 3\n1 5\n1 8\n"
    "2 5\n2 6\n"
    "3 1\n3 2\n"
    "4 3\n4 7\n4 8\n"
    "5 3\n5 4\n5 7\n5 8\n"
    "6 5\n6 7\n"
    "7 5\n"
    "8 1\n8 2\n";

inline icx::DiGraph graph4() { return icx::parse_edge_list(std::string(kGraph4)); }
inline icx::DiGraph graph8() { return icx::parse_edge_list(std::string(kGraph8)); }

// Frozen spectral data (unit weights).
inline constexpr double kRho4 = 1.220744084605758;
inline constexpr std::array<double, 4> kC4 = {0.180827486603835, 0.328956393296211,
                                              0.269472035494194, 0.220744084605760};
inline constexpr double kRho8 = 2.536721572202195;
inline constexpr std::array<double, 8> kC8 = {0.113780746283382, 0.158634208929897,
                                              0.144315036799159, 0.071339039731391,
                                              0.180967281026809, 0.062535128280627,
                                              0.124113522149577, 0.144315036799159};

// The standard inverse instance: scores of nodes 1 and 2 exchanged,
// rho kept at rho0, floor 1e-3.
inline constexpr double kEps = 1e-3;

inline std::vector<double> swapped_scores() {
    std::vector<double> c(9, 0.0);
    for (int i = 0; i < 8; ++i) c[i + 1] = kC8[i];
    std::swap(c[1], c[2]);
    return c;
}

inline icx::InverseSystem swapped_system(double eps = kEps) {
    return icx::build_system(graph8(), icx::CentralitySpec{swapped_scores(), kRho8, eps});
}

// Frozen scalars of the swapped instance.
inline constexpr double kEpsMax8 = 0.645323324202868;
inline constexpr double kBigM8 = 6.340891723823321;
inline constexpr double kForced26 = 1.394209601462834;  // single in-arc of node 6
inline constexpr double kForced54 = 1.0;                // single in-arc of node 4 (exact identity)

// Frozen optimal objective values of the swapped instance.
inline constexpr double kObj1 = 2.678436005840672;
inline constexpr double kObj2 = 0.906682677983420;
inline constexpr double kObj3 = 0.394209601462835;
inline constexpr double kObj4 = 15.685615761708284;  // beta == 1
inline constexpr int kObj5 = 3;                      // support {1, 2, 3}
inline constexpr int kObj6 = 6;

// Frozen a priori objective intervals of the swapped instance (P1..P5).
inline constexpr std::array<std::pair<double, double>, 5> kIntervals = {{
    {2.678336784218, 43.917580529570},
    {0.906682677983, 135.259794060270},
    {0.394209601463, 6.340891723823},
    {15.681610451335, 29.821456334019},
    {0.0, 8.0},
}};

// Independently tabulated optimal weights of the swapped instance, rounded
// to four decimals: one column per problem (P1..P6), rows in arc order.
// Frozen here as a golden record; the solver suites check their solutions
// evaluate to the same objective values these columns do.
struct GoldenRow {
    int tail, head;
    std::array<double, 6> col;
};

inline constexpr std::array<GoldenRow, 20> kGolden8 = {{
    {1, 2, {0.0010, 0.6234, 0.6058, 1.8176, 0.9088, 0.0010}},
    {1, 3, {1.0000, 0.8871, 1.3442, 0.0010, 0.7173, 1.0000}},
    {1, 5, {1.0000, 1.0000, 0.6058, 2.8920, 0.0010, 1.0000}},
    {1, 8, {1.0000, 0.8871, 1.3442, 0.0010, 0.7173, 1.0000}},
    {2, 5, {1.0000, 1.0000, 1.3363, 0.0010, 2.3928, 1.0000}},
    {2, 6, {1.3942, 1.3942, 1.3942, 1.3942, 1.3942, 1.3942}},
    {3, 1, {1.7884, 1.3942, 1.3942, 0.0010, 1.7884, 1.7884}},
    {3, 2, {1.0000, 0.6574, 0.7283, 0.0010, 0.0010, 0.9989}},
    {4, 3, {1.0000, 0.9492, 0.6058, 0.0010, 1.0000, 1.0000}},
    {4, 7, {1.0000, 1.0000, 0.6058, 0.0010, 1.0000, 1.0000}},
    {4, 8, {1.0000, 0.9492, 0.6058, 0.0010, 1.0000, 1.0000}},
    {5, 3, {0.7521, 0.8712, 0.6058, 2.0217, 1.0000, 0.7521}},
    {5, 4, {1.0000, 1.0000, 1.0000, 1.0000, 1.0000, 1.0000}},
    {5, 7, {1.0000, 1.0000, 1.2916, 1.7390, 1.0000, 1.0000}},
    {5, 8, {0.7521, 0.8712, 0.6058, 2.0217, 1.0000, 0.7521}},
    {6, 5, {1.0000, 1.0000, 0.6058, 0.0010, 1.0000, 1.0000}},
    {6, 7, {1.0000, 1.0000, 0.6058, 0.0010, 1.0000, 1.0000}},
    {7, 5, {1.0000, 1.0000, 1.3942, 0.0010, 1.0000, 1.0000}},
    {8, 1, {1.0000, 1.3942, 1.3942, 2.7874, 1.0000, 1.0000}},
    {8, 2, {0.9989, 0.6574, 0.6058, 0.0010, 1.0000, 1.0000}},
}};

// Column `p` (0-based) of the golden record as an arc-indexed weight vector.
inline std::vector<double> golden_column(const icx::DiGraph& g, int p) {
    std::vector<double> w(static_cast<size_t>(g.arc_count()), 0.0);
    for (const auto& row : kGolden8) {
        auto k = g.find_arc(row.tail, row.head);
        w.at(static_cast<size_t>(*k)) = row.col.at(static_cast<size_t>(p));
    }
    return w;
}

}  // namespace fixtures
