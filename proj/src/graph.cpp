#include "isolab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "isolab/errors.hpp"

namespace isolab {

namespace {

void canonicalize(std::size_t n, std::vector<Edge>& edges) {
    for (auto& e : edges) {
        if (e.u >= n || e.v >= n) {
            throw ContractError("edge endpoint out of range: {" + std::to_string(e.u) + "," +
                                std::to_string(e.v) + "} with n=" + std::to_string(n));
        }
        if (e.u == e.v) {
            throw ContractError("self-loop at node " + std::to_string(e.u));
        }
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end());
    auto dup = std::adjacent_find(edges.begin(), edges.end());
    if (dup != edges.end()) {
        throw ContractError("duplicate edge {" + std::to_string(dup->u) + "," +
                            std::to_string(dup->v) + "}");
    }
}

}  // namespace

Graph::Graph(std::size_t n, std::vector<Edge> edges)
    : Graph(n, std::move(edges), std::vector<double>(n, 1.0), 1) {}

Graph::Graph(std::size_t n, std::vector<Edge> edges, std::vector<double> features,
             std::size_t feature_width)
    : n_(n), width_(feature_width), edges_(std::move(edges)), features_(std::move(features)) {
    if (n_ > std::numeric_limits<NodeId>::max()) {
        throw ContractError("node count exceeds index type");
    }
    if (width_ == 0) throw ContractError("feature width must be at least 1");
    if (features_.size() != n_ * width_) {
        throw ContractError("feature matrix has " + std::to_string(features_.size()) +
                            " entries, expected " + std::to_string(n_) + "x" +
                            std::to_string(width_));
    }
    for (double x : features_) {
        if (!std::isfinite(x)) throw ContractError("non-finite feature value");
    }
    canonicalize(n_, edges_);
    build_adjacency();
}

void Graph::build_adjacency() {
    std::vector<std::size_t> degree(n_, 0);
    for (const auto& e : edges_) {
        ++degree[e.u];
        ++degree[e.v];
    }
    offsets_.assign(n_ + 1, 0);
    std::partial_sum(degree.begin(), degree.end(), offsets_.begin() + 1);
    adjacency_.assign(offsets_.back(), 0);
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& e : edges_) {
        adjacency_[cursor[e.u]++] = e.v;
        adjacency_[cursor[e.v]++] = e.u;
    }
    for (std::size_t v = 0; v < n_; ++v) {
        std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
                  adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
    }
}

std::span<const double> Graph::feature_row(NodeId v) const {
    return std::span<const double>(features_).subspan(std::size_t{v} * width_, width_);
}

std::span<const NodeId> Graph::neighbors(NodeId v) const {
    return std::span<const NodeId>(adjacency_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

Graph Graph::with_appended_columns(std::span<const double> columns, std::size_t count) const {
    if (columns.size() != n_ * count) {
        throw ContractError("appended block has wrong size");
    }
    const std::size_t width = width_ + count;
    std::vector<double> features(n_ * width);
    for (std::size_t v = 0; v < n_; ++v) {
        std::copy_n(features_.begin() + static_cast<std::ptrdiff_t>(v * width_), width_,
                    features.begin() + static_cast<std::ptrdiff_t>(v * width));
        std::copy_n(columns.begin() + static_cast<std::ptrdiff_t>(v * count), count,
                    features.begin() + static_cast<std::ptrdiff_t>(v * width + width_));
    }
    return Graph(n_, edges_, std::move(features), width);
}

Permutation::Permutation(std::vector<NodeId> mapping) : mapping_(std::move(mapping)) {
    std::vector<bool> seen(mapping_.size(), false);
    for (NodeId target : mapping_) {
        if (target >= mapping_.size() || seen[target]) {
            throw ContractError("mapping is not a bijection on 0..n-1");
        }
        seen[target] = true;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<NodeId> mapping(n);
    std::iota(mapping.begin(), mapping.end(), NodeId{0});
    return Permutation(std::move(mapping));
}

Permutation Permutation::inverse() const {
    std::vector<NodeId> inv(mapping_.size());
    for (std::size_t v = 0; v < mapping_.size(); ++v) inv[mapping_[v]] = static_cast<NodeId>(v);
    return Permutation(std::move(inv));
}

Graph apply_permutation(const Graph& g, const Permutation& p) {
    if (p.size() != g.node_count()) {
        throw ContractError("permutation length " + std::to_string(p.size()) +
                            " does not match node count " + std::to_string(g.node_count()));
    }
    std::vector<Edge> edges;
    edges.reserve(g.edge_count());
    for (const auto& e : g.edges()) edges.push_back({p[e.u], p[e.v]});

    const std::size_t d = g.feature_width();
    std::vector<double> features(g.node_count() * d);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        auto row = g.feature_row(v);
        std::copy(row.begin(), row.end(),
                  features.begin() + static_cast<std::ptrdiff_t>(std::size_t{p[v]} * d));
    }
    return Graph(g.node_count(), std::move(edges), std::move(features), d);
}

}  // namespace isolab
