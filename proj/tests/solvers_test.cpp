#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "icx/errors.hpp"
#include "icx/graph.hpp"
#include "icx/inverse.hpp"
#include "icx/solvers.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

using icx::Problem;

TEST_SUITE_BEGIN("solvers");

namespace {

void check_feasible(const icx::InverseSystem& sys, const icx::WeightSolution& s,
                    double res_tol = 1e-10) {
    REQUIRE(s.w.size() == static_cast<size_t>(sys.arc_count()));
    for (double x : s.w) {
        CHECK(x >= sys.epsilon() - 1e-15);
        CHECK(x <= (1.0 + sys.big_m) * (1.0 + 1e-9));
    }
    CHECK(s.residual <= res_tol);
    CHECK(oracles::dense_residual(sys, s.w) <= res_tol);
}

}  // namespace

TEST_CASE("problem tags") {
    using icx::problem_from_string;
    CHECK(std::string(icx::to_string(Problem::P1)) == "P1");
    CHECK(std::string(icx::to_string(Problem::P6)) == "P6");
    CHECK(problem_from_string("p3") == Problem::P3);
    CHECK(problem_from_string("P5") == Problem::P5);
    CHECK_FALSE(problem_from_string("P7").has_value());
    CHECK_FALSE(problem_from_string("").has_value());
}

TEST_CASE("swapped example: frozen optima") {
    auto sys = fixtures::swapped_system();
    auto g = sys.graph;
    int k26 = g.find_arc(2, 6).value();
    int k54 = g.find_arc(5, 4).value();

    auto s1 = icx::solve_p1(sys);
    auto s2 = icx::solve_p2(sys);
    auto s3 = icx::solve_p3(sys);
    auto s4 = icx::solve_p4(sys, std::vector<double>(20, 1.0));
    auto s5 = icx::solve_p5(sys);
    auto s6 = icx::solve_p6(sys);

    CHECK(s1.objective == doctest::Approx(fixtures::kObj1).epsilon(1e-12));
    CHECK(s2.objective == doctest::Approx(fixtures::kObj2).epsilon(1e-12));
    CHECK(s3.objective == doctest::Approx(fixtures::kObj3).epsilon(1e-12));
    CHECK(s4.objective == doctest::Approx(fixtures::kObj4).epsilon(1e-12));
    CHECK(s5.objective == doctest::Approx(fixtures::kObj5));
    CHECK(s6.objective == doctest::Approx(fixtures::kObj6));

    CHECK(s5.active_nodes == std::vector<int>{1, 2, 3});
    CHECK(s5.nodes_explored > 0);
    CHECK(static_cast<int>(s6.changed_arcs.size()) == fixtures::kObj6);
    CHECK(std::is_sorted(s6.changed_arcs.begin(), s6.changed_arcs.end()));

    for (const auto* s : {&s1, &s2, &s3, &s4, &s5, &s6}) {
        check_feasible(sys, *s);
        // single-in-arc rows force these two weights in every solution
        CHECK(s->w[static_cast<size_t>(k26)] ==
              doctest::Approx(fixtures::kForced26).epsilon(1e-10));
        CHECK(s->w[static_cast<size_t>(k54)] ==
              doctest::Approx(fixtures::kForced54).epsilon(1e-10));
        // the reported objective is the objective function at w
        CHECK(icx::evaluate_objective(sys, s->problem, s->w) ==
              doctest::Approx(s->objective).epsilon(1e-12));
    }

    // dispatch agrees with the direct calls
    for (Problem p : icx::kAllProblems) {
        auto direct = icx::solve(sys, p);
        CHECK(direct.problem == p);
    }
}

TEST_CASE("swapped example: golden columns evaluate to the same objectives") {
    auto sys = fixtures::swapped_system();
    for (int p = 0; p < 6; ++p) {
        auto col = fixtures::golden_column(sys.graph, p);
        // the columns are rounded to 4 decimals, so they satisfy the system
        // only up to ~1e-5 and their objectives to ~1e-2
        CHECK(oracles::dense_residual(sys, col) <= 2e-5);
        double col_obj = icx::evaluate_objective(sys, icx::kAllProblems[static_cast<size_t>(p)], col);
        double opt = icx::solve(sys, icx::kAllProblems[static_cast<size_t>(p)]).objective;
        CHECK(opt == doctest::Approx(col_obj).epsilon(0.01));
        CHECK(opt <= col_obj + 1e-2);  // never beaten by the golden point
    }
}

TEST_CASE("row solvers match the LP/QP oracles on random instances") {
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> ub(0.1, 4.0);
    int rows_seen = 0;
    int trials = 0;
    while (rows_seen < 500) {
        ++trials;
        int n = 3 + static_cast<int>(rng() % 4);  // back-stars of width <= 5
        auto g = oracles::random_sc_graph(rng, n, 0.35);
        std::uniform_real_distribution<double> urho(0.5, 2.0);
        auto sys = icx::build_system(g, oracles::random_spec(rng, g, urho(rng)));
        rows_seen += n;

        auto s1 = icx::solve_p1(sys);
        check_feasible(sys, s1, 1e-10);
        CHECK(s1.objective == doctest::Approx(oracles::p1_oracle(sys)).epsilon(1e-10));

        auto s3 = icx::solve_p3(sys);
        check_feasible(sys, s3, 1e-10);
        CHECK(s3.objective == doctest::Approx(oracles::p3_oracle(sys)).epsilon(1e-10));

        std::vector<double> beta(static_cast<size_t>(g.arc_count()));
        for (auto& b : beta) b = ub(rng);
        auto s4 = icx::solve_p4(sys, beta);
        check_feasible(sys, s4, 1e-10);
        CHECK(s4.objective == doctest::Approx(oracles::p4_oracle(sys, beta)).epsilon(1e-10));

        auto s2 = icx::solve_p2(sys);
        check_feasible(sys, s2, 1e-10);
        CHECK(oracles::p2_kkt_residual(sys, s2.w) <= 1e-10);
        CHECK(s2.objective == doctest::Approx(oracles::p2_oracle(sys)).epsilon(1e-9));
    }
    CHECK(trials >= 100);
}

TEST_CASE("P1 raises exactly one arc per deficient row, smallest arc on ties") {
    // complete digraph on 3 nodes, uniform scores, rho above the row sums
    std::vector<icx::Arc> arcs;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            if (i != j) arcs.push_back({i, j});
    auto g = icx::DiGraph::from_arcs(3, arcs);
    std::vector<double> c = {0.0, 1.0 / 3, 1.0 / 3, 1.0 / 3};
    auto sys = icx::build_system(g, icx::CentralitySpec{c, 2.3, 1e-3});
    auto s = icx::solve_p1(sys);
    for (int j = 1; j <= 3; ++j) {
        const auto& row = sys.rows[static_cast<size_t>(j)];
        // one raised arc and it is the first of the row (equal coefficients)
        CHECK(s.w[static_cast<size_t>(row[0].arc)] > 1.0);
        for (size_t t = 1; t < row.size(); ++t)
            CHECK(s.w[static_cast<size_t>(row[t].arc)] == 1.0);
    }
}

TEST_CASE("P5 search matches exhaustive enumeration") {
    auto sys = fixtures::swapped_system();
    CHECK(icx::p5_brute_force(sys) == 3);

    std::mt19937 rng(202);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 3 + static_cast<int>(rng() % 6);  // up to 8
        auto g = oracles::random_sc_graph(rng, n, 0.3);
        auto sys2 = icx::build_system(g, oracles::random_spec(rng, g));
        auto s = icx::solve_p5(sys2);
        check_feasible(sys2, s);
        CHECK(static_cast<int>(s.objective) == icx::p5_brute_force(sys2));
        // lexicographically smallest optimal support
        CHECK(s.active_nodes == oracles::p5_lex_support(sys2));
        // the weights realise exactly the reported support
        auto active_eval = icx::evaluate_objective(sys2, Problem::P5, s.w);
        CHECK(active_eval == doctest::Approx(s.objective));
    }
}

TEST_CASE("P5 never activates a node without out-arcs") {
    auto g = icx::parse_edge_list(std::string("1 2\n2 1\n1 3\n2 3\n"));
    std::vector<double> c = {0.0, 1.0, 1.0, 1.0};
    auto sys = icx::build_system(g, icx::CentralitySpec{c, 1.0, 1e-3});
    auto s = icx::solve_p5(sys);
    CHECK(s.objective == doctest::Approx(2));
    CHECK(s.active_nodes == std::vector<int>{1, 2});
    check_feasible(sys, s);
}

TEST_CASE("P6 closed form matches exhaustive enumeration") {
    auto sys = fixtures::swapped_system();
    CHECK(icx::p6_brute_force(sys) == 6);

    std::mt19937 rng(303);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 3 + static_cast<int>(rng() % 5);  // up to 7
        auto g = oracles::random_sc_graph(rng, n, 0.35);
        auto sys2 = icx::build_system(g, oracles::random_spec(rng, g));
        auto s = icx::solve_p6(sys2);
        check_feasible(sys2, s);
        CHECK(static_cast<int>(s.objective) == icx::p6_brute_force(sys2));
        CHECK(static_cast<int>(s.changed_arcs.size()) == static_cast<int>(s.objective));
        CHECK(icx::evaluate_objective(sys2, Problem::P6, s.w) == doctest::Approx(s.objective));
    }
}

TEST_CASE("reproducing the forward scores needs no changes") {
    std::vector<double> c0(9, 0.0);
    for (int i = 0; i < 8; ++i) c0[static_cast<size_t>(i + 1)] = fixtures::kC8[static_cast<size_t>(i)];
    auto sys = icx::build_system(fixtures::graph8(),
                                 icx::CentralitySpec{c0, fixtures::kRho8, 1e-3});
    CHECK(icx::solve_p1(sys).objective <= 1e-9);
    CHECK(icx::solve_p2(sys).objective <= 1e-9);
    CHECK(icx::solve_p3(sys).objective <= 1e-9);
    CHECK(icx::solve_p5(sys).objective == 0.0);
    CHECK(icx::solve_p5(sys).active_nodes.empty());
    CHECK(icx::solve_p6(sys).objective == 0.0);
}

TEST_CASE("solutions are invariant under scaling of the scores") {
    auto g = fixtures::graph8();
    auto reference = fixtures::swapped_system();
    std::vector<icx::WeightSolution> base;
    for (Problem p : icx::kAllProblems) base.push_back(icx::solve(reference, p));

    for (double lambda : {1e-3, 1e3}) {
        auto c = fixtures::swapped_scores();
        for (auto& x : c) x *= lambda;
        auto sys = icx::build_system(g, icx::CentralitySpec{c, fixtures::kRho8, fixtures::kEps});
        for (size_t i = 0; i < icx::kAllProblems.size(); ++i) {
            auto s = icx::solve(sys, icx::kAllProblems[i]);
            for (size_t k = 0; k < s.w.size(); ++k)
                CHECK(std::abs(s.w[k] - base[i].w[k]) <= 1e-9);
        }
    }
}

TEST_CASE("solvers are deterministic") {
    auto sys = fixtures::swapped_system();
    for (Problem p : icx::kAllProblems) {
        auto a = icx::solve(sys, p);
        auto b = icx::solve(sys, p);
        CHECK(a.w == b.w);
        CHECK(a.objective == b.objective);
        CHECK(a.active_nodes == b.active_nodes);
        CHECK(a.changed_arcs == b.changed_arcs);
    }
}

TEST_CASE("input guards") {
    auto sys = fixtures::swapped_system();
    CHECK_THROWS_AS(icx::solve_p4(sys, std::vector<double>(3, 1.0)), icx::ValidationError);
    CHECK_THROWS_AS(icx::solve_p4(sys, std::vector<double>(20, -1.0)), icx::ValidationError);
    CHECK_THROWS_AS(icx::evaluate_objective(sys, Problem::P1, std::vector<double>(3, 1.0)),
                    icx::ValidationError);

    // brute-force helpers refuse instances beyond their budget
    std::mt19937 rng(404);
    auto big = oracles::random_sc_graph(rng, 13, 0.1);
    auto bigsys = icx::build_system(big, oracles::random_spec(rng, big));
    CHECK_THROWS_AS(icx::p5_brute_force(bigsys), std::invalid_argument);
}

TEST_SUITE_END();
