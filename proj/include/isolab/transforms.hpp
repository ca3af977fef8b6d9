#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

#include "isolab/graph.hpp"

namespace isolab {

enum class TransformKind {
    base,
    virtual_node,
    degree,
    closeness,
    betweenness,
    eigenvector,
    distance_encoding,
    graph_encoding,
    subgraph_extraction,
    extra_node,
};

/// Report order of the methods.
inline constexpr std::array<TransformKind, 10> kAllTransformKinds = {
    TransformKind::base,        TransformKind::virtual_node,      TransformKind::degree,
    TransformKind::closeness,   TransformKind::betweenness,       TransformKind::eigenvector,
    TransformKind::distance_encoding, TransformKind::graph_encoding,
    TransformKind::subgraph_extraction, TransformKind::extra_node,
};

enum class SignMode {
    raw,
    // Each eigenvector's sign is fixed by a permutation-invariant rule: the
    // first odd power sum (sum of v_i^3, v_i^5, ...) that is clearly non-zero
    // must be positive. Vectors whose value multiset is symmetric under
    // negation fall back to "first entry with |v_i| > 1e-9 is positive".
    first_nonzero_positive,
};

struct TransformSpec {
    TransformKind kind = TransformKind::base;
    std::size_t k = 4;        // Laplacian eigenvector count
    std::size_t radius = 2;   // ego-graph radius
    std::size_t d_max = 8;    // distance histogram cap
    SignMode sign_mode = SignMode::raw;
    double power_tol = 1e-8;
    std::size_t power_max_iter = 1000;

    /// Throws ContractError for out-of-range parameters.
    void validate() const;
};

std::string_view kind_token(TransformKind kind);
/// Human-readable method name as used in report tables ("Distance Encoding").
std::string_view display_name(TransformKind kind);
std::string_view sign_mode_token(SignMode mode);

/// Parses "kind" or "kind:key=val,key=val". Keys: k, radius, d_max, sign,
/// tol, max_iter. Throws ContractError listing the valid kinds/keys.
TransformSpec parse_transform_spec(std::string_view token);

/// Canonical token including the parameters that matter for the kind.
std::string to_token(const TransformSpec& spec);

/// A new node joined to every existing node; its feature row is all ones.
Graph virtual_node(const Graph& g);

enum class Centrality { degree, closeness, betweenness, eigenvector };

/// Appends one column holding the chosen centrality.
Graph centrality_augment(const Graph& g, Centrality measure, const TransformSpec& spec = {});

/// Appends d_max + 1 columns: counts of nodes at distance 1..d_max, then the
/// count of reachable nodes farther than d_max.
Graph distance_encoding(const Graph& g, const TransformSpec& spec = {});

/// Appends k columns: eigenvectors of the normalized Laplacian at sorted
/// eigenvalue positions 1..k, zero-padded when n - 1 < k.
Graph graph_encoding(const Graph& g, const TransformSpec& spec = {});

/// Appends (node count, edge count) of each node's radius-ball induced subgraph.
Graph subgraph_extraction(const Graph& g, const TransformSpec& spec = {});

/// Subdivides every edge with a fresh all-ones node (in canonical edge order).
Graph extra_node(const Graph& g);

Graph apply_transform(const TransformSpec& spec, const Graph& g);

}  // namespace isolab
