#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "isolab/graph.hpp"

namespace isolab {

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

/// Hop distances from `source`; kUnreachable for other components.
std::vector<std::size_t> bfs_distances(const Graph& g, NodeId source);

// All centralities require n >= 1 and throw ContractError otherwise.

/// Raw number of incident edges.
std::vector<double> degree_centrality(const Graph& g);

/// Component-scaled closeness: ((r-1)/(n-1)) * ((r-1)/sum of distances), where
/// r counts the nodes reachable from v including v. Zero for isolated nodes.
std::vector<double> closeness_centrality(const Graph& g);

/// Brandes accumulation over unordered pairs, endpoints excluded, unnormalized.
std::vector<double> betweenness_centrality(const Graph& g);

/// Leading eigenvector of the adjacency matrix by power iteration on A + I
/// (the shift keeps bipartite graphs from oscillating), starting from the
/// all-ones vector and renormalized to unit Euclidean length each step.
/// Stops once successive iterates differ by < tol in max norm; throws
/// ConvergenceError naming the last gap after max_iter steps.
std::vector<double> eigenvector_centrality(const Graph& g, double tol = 1e-8,
                                           std::size_t max_iter = 1000);

}  // namespace isolab
