#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace isolab {

using NodeId = std::uint32_t;

// Unordered edge, stored canonically with u < v.
struct Edge {
    NodeId u = 0;
    NodeId v = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected simple graph with a dense n x d node-feature matrix.
///
/// Nodes are 0..n-1. Edges are kept sorted and canonical (u < v) and the
/// adjacency lists are sorted ascending, so two graphs with the same edge set
/// have identical internal layout. Features are row-major; every entry is
/// finite and d >= 1. A default-constructed graph has n = 0 and d = 1.
///
/// Instances are immutable; all "modifying" operations return a new graph.
class Graph {
public:
    Graph() = default;

    /// Builds a graph with the baseline all-ones n x 1 feature matrix.
    /// Throws ContractError on self-loops, duplicates or out-of-range endpoints.
    Graph(std::size_t n, std::vector<Edge> edges);

    /// Builds a graph with explicit row-major features of the given width.
    Graph(std::size_t n, std::vector<Edge> edges, std::vector<double> features,
          std::size_t feature_width);

    std::size_t node_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::size_t feature_width() const noexcept { return width_; }

    std::span<const Edge> edges() const noexcept { return edges_; }
    std::span<const double> features() const noexcept { return features_; }
    std::span<const double> feature_row(NodeId v) const;

    /// Neighbors of v in ascending order.
    std::span<const NodeId> neighbors(NodeId v) const;
    std::size_t degree(NodeId v) const { return neighbors(v).size(); }
    bool has_edge(NodeId u, NodeId v) const;

    /// Same topology, features extended by `count` columns taken row-major
    /// from `columns` (n x count).
    Graph with_appended_columns(std::span<const double> columns, std::size_t count) const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.width_ == b.width_ && a.edges_ == b.edges_ &&
               a.features_ == b.features_;
    }

private:
    void build_adjacency();

    std::size_t n_ = 0;
    std::size_t width_ = 1;
    std::vector<Edge> edges_;
    std::vector<double> features_;
    std::vector<std::size_t> offsets_{0};
    std::vector<NodeId> adjacency_;
};

/// Bijection on 0..n-1; node v of the source graph becomes node mapping[v].
class Permutation {
public:
    Permutation() = default;
    /// Throws ContractError unless `mapping` is a bijection on 0..n-1.
    explicit Permutation(std::vector<NodeId> mapping);

    static Permutation identity(std::size_t n);

    std::size_t size() const noexcept { return mapping_.size(); }
    NodeId operator[](NodeId v) const { return mapping_[v]; }
    std::span<const NodeId> mapping() const noexcept { return mapping_; }
    Permutation inverse() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<NodeId> mapping_;
};

/// Relabels g: edge {u,v} becomes {p(u),p(v)} and feature row v moves to p(v).
Graph apply_permutation(const Graph& g, const Permutation& p);

}  // namespace isolab
