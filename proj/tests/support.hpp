#pragma once

#include <complex>
#include <random>
#include <vector>

#include "holant/graph.hpp"
#include "holant/linear_system.hpp"
#include "holant/signature.hpp"

namespace holant::testkit {

// Random simple graph with 1..max_edges edges and degree <= max_deg.
MultiGraph random_graph(std::mt19937_64& rng, int max_edges, int max_deg);

// Table with f(0) = 1 and every other entry of modulus <= r, at least one
// entry reaching r exactly (so r(f) = r when r > 0).
Signature random_signature(std::mt19937_64& rng, int arity, int kappa, double r);

// Independent random table per vertex.
SignatureAssignment random_assignment(std::mt19937_64& rng, const MultiGraph& g, int kappa, double r);

// z_0 = 1 and z_i = scale * e^{i theta_i}.
FugacityVector random_fugacity(std::mt19937_64& rng, int kappa, double scale);

// Entries in {-1, 0, 1}, caps in {1, 2}, |w_j| <= max_weight.
LinearSystem random_linear_system(std::mt19937_64& rng, int max_rows, int max_cols, double max_weight);

// Connected graphs on k labelled vertices as edge lists.
std::vector<std::vector<std::pair<int, int>>> connected_labelled_graphs(int k);

// Sum over spanning connected edge subsets of (-1)^{|E|}, by direct subset loop.
long long ursell_by_subsets(int nodes, const std::vector<std::pair<int, int>>& edges);

// Relative distance |a/b - 1| and |arg(a/b)|.
double rel_error(std::complex<double> a, std::complex<double> b);
double angle_error(std::complex<double> a, std::complex<double> b);

}  // namespace holant::testkit
