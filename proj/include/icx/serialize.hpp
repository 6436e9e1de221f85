#pragma once

#include <string>

#include <json.hpp>

#include "icx/bounds.hpp"
#include "icx/graph.hpp"
#include "icx/inverse.hpp"
#include "icx/solvers.hpp"
#include "icx/spectral.hpp"

namespace icx {

// Records keep their fields in a fixed insertion order so that identical
// inputs serialize to identical bytes.
using ordered_json = nlohmann::ordered_json;

/// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double x);

ordered_json centrality_to_json(const CentralityResult& r);
std::string centrality_to_csv(const CentralityResult& r);

ordered_json graph_to_json(const DiGraph& g);
std::string graph_to_csv(const DiGraph& g);

ordered_json solution_to_json(const DiGraph& g, const WeightSolution& s, double rho,
                              double epsilon, const ObjectiveInterval* bounds = nullptr);
std::string solution_to_csv(const DiGraph& g, const WeightSolution& s);

struct ParsedSolution {
    WeightSolution solution;
    double rho = 0.0;
    double epsilon = 0.0;
    ObjectiveInterval bounds;
    bool has_bounds = false;
};

/// Inverse of solution_to_json. The graph supplies the arc order; a record
/// whose arcs do not exactly cover the graph's is rejected (ValidationError).
ParsedSolution solution_from_json(const nlohmann::json& rec, const DiGraph& g);

/// `problems` restricts the objectives section; empty means all six.
ordered_json bounds_to_json(const InverseSystem& sys, const BoundsReport& rep,
                            const std::vector<Problem>& problems = {});
std::string bounds_to_csv(const BoundsReport& rep, const std::vector<Problem>& problems = {});

ordered_json verification_to_json(const RealizationReport& rep, double rho, double tol);

} // namespace icx
