#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "icx/errors.hpp"
#include "icx/graph.hpp"
#include "icx/spectral.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

TEST_SUITE_BEGIN("spectral");

TEST_CASE("4-node example") {
    auto r = icx::power_iteration(fixtures::graph4());
    CHECK(r.rho == doctest::Approx(fixtures::kRho4).epsilon(1e-10));
    for (int v = 1; v <= 4; ++v)
        CHECK(r.c[static_cast<size_t>(v)] ==
              doctest::Approx(fixtures::kC4[static_cast<size_t>(v - 1)]).epsilon(1e-9));
    CHECK(r.residual <= 1e-12);
    double sum = 0.0;
    for (int v = 1; v <= 4; ++v) sum += r.c[static_cast<size_t>(v)];
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("8-node example") {
    auto r = icx::power_iteration(fixtures::graph8());
    CHECK(r.rho == doctest::Approx(fixtures::kRho8).epsilon(1e-10));
    for (int v = 1; v <= 8; ++v)
        CHECK(r.c[static_cast<size_t>(v)] ==
              doctest::Approx(fixtures::kC8[static_cast<size_t>(v - 1)]).epsilon(1e-9));
    CHECK(r.residual <= 1e-12);
}

TEST_CASE("periodic structures converge via the shifted restart") {
    // a bare k-cycle is periodic; the plain iteration oscillates from any
    // non-uniform start, so this has to come back through the A^T + I pass
    auto g3 = icx::parse_edge_list(std::string("1 2\n2 3\n3 1\n"));
    icx::PowerOptions opt;
    opt.start = {0.0, 0.7, 0.2, 0.1};
    auto r = icx::power_iteration(g3, opt);
    CHECK(r.rho == doctest::Approx(1.0).epsilon(1e-10));
    for (int v = 1; v <= 3; ++v)
        CHECK(r.c[static_cast<size_t>(v)] == doctest::Approx(1.0 / 3.0).epsilon(1e-10));

    // weighted 2-cycle: rho = sqrt(4 * 1) = 2, c proportional to (1, 2)
    auto g2 = icx::parse_edge_list(std::string("1 2 4\n2 1 1\n"));
    auto r2 = icx::power_iteration(g2);
    CHECK(r2.rho == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(r2.c[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(r2.c[2] == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("start vector does not change the result") {
    std::mt19937 rng(11);
    auto g = oracles::random_sc_graph(rng, 9, 0.25);
    auto base = icx::power_iteration(g);
    for (int trial = 0; trial < 3; ++trial) {
        icx::PowerOptions opt;
        opt.start = oracles::random_scores(rng, g.node_count(), 0.1, 2.0);
        auto r = icx::power_iteration(g, opt);
        CHECK(r.rho == doctest::Approx(base.rho).epsilon(1e-9));
        for (int v = 1; v <= g.node_count(); ++v)
            CHECK(r.c[static_cast<size_t>(v)] ==
                  doctest::Approx(base.c[static_cast<size_t>(v)]).epsilon(1e-8));
    }
}

TEST_CASE("eigen-equation holds on random weighted graphs") {
    std::mt19937 rng(22);
    for (int trial = 0; trial < 10; ++trial) {
        auto g0 = oracles::random_sc_graph(rng, 4 + static_cast<int>(rng() % 6), 0.3);
        std::uniform_real_distribution<double> u(0.2, 3.0);
        std::vector<double> w(static_cast<size_t>(g0.arc_count()));
        for (auto& x : w) x = u(rng);
        auto g = g0.with_weights(w);
        auto r = icx::power_iteration(g);
        CHECK(r.rho > 0.0);
        // independent residual: dense A^T c against rho c
        int n = g.node_count();
        std::vector<double> lhs(static_cast<size_t>(n) + 1, 0.0);
        for (int k = 0; k < g.arc_count(); ++k) {
            const auto& a = g.arcs()[static_cast<size_t>(k)];
            lhs[static_cast<size_t>(a.head)] +=
                g.weights()[static_cast<size_t>(k)] * r.c[static_cast<size_t>(a.tail)];
        }
        for (int v = 1; v <= n; ++v)
            CHECK(std::abs(lhs[static_cast<size_t>(v)] - r.rho * r.c[static_cast<size_t>(v)]) <=
                  1e-11 * std::max(1.0, r.rho));
    }
}

TEST_CASE("input validation") {
    auto path = icx::parse_edge_list(std::string("1 2\n2 3\n"));
    CHECK_THROWS_AS(icx::power_iteration(path), icx::TopologyError);

    icx::PowerOptions bad;
    bad.start = {0.0, 1.0};  // wrong size for the 4-node graph
    CHECK_THROWS_AS(icx::power_iteration(fixtures::graph4(), bad), icx::ValidationError);
    bad.start = {0.0, 1.0, -1.0, 1.0, 1.0};
    CHECK_THROWS_AS(icx::power_iteration(fixtures::graph4(), bad), icx::ValidationError);
}

TEST_CASE("iteration budget is enforced") {
    icx::PowerOptions opt;
    opt.max_iter = 3;
    try {
        icx::power_iteration(fixtures::graph8(), opt);
        FAIL_CHECK("expected ConvergenceError");
    } catch (const icx::ConvergenceError& e) {
        CHECK(e.iterations() >= 3);
        CHECK(e.residual() > 0.0);
    }
}

TEST_CASE("verify_realization") {
    auto g = fixtures::graph8();
    auto r = icx::power_iteration(g);
    auto rep = icx::verify_realization(g, r.c, r.rho);
    CHECK(rep.pass);
    CHECK(rep.residual_inf <= 1e-12);
    CHECK(rep.per_node.size() == 9);

    // a perturbed rho fails
    auto bad = icx::verify_realization(g, r.c, r.rho + 1e-3);
    CHECK_FALSE(bad.pass);
    CHECK(bad.residual_inf > 1e-8);
}

TEST_SUITE_END();
