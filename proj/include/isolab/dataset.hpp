#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "isolab/graph.hpp"
#include "isolab/isomorphism.hpp"

namespace isolab {

struct GraphPair {
    std::size_t first = 0;   // index into PairDataset::graphs
    std::size_t second = 0;
    bool isomorphic = false; // ground truth
    std::string origin;
    bool verified = false;   // ground truth confirmed by are_isomorphic
};

/// Graph pool plus labelled pairs over it. An augmented isomorphic pair shares
/// its first graph with the pool and adds one permuted copy, so the pool holds
/// every distinct graph instance exactly once.
struct PairDataset {
    std::vector<Graph> graphs;
    std::vector<GraphPair> pairs;
    std::uint64_t seed = 0;
    std::vector<std::string> warnings;

    std::size_t add_graph(Graph g);
    std::size_t count_isomorphic() const;
    std::size_t count_unverified() const;
};

/// Largest pair size whose ground truth is re-checked at load.
inline constexpr std::size_t kVerifyMaxNodes = 16;

/// Pairs consecutive graphs (2i, 2i+1) as non-isomorphic pairs. Pairs with at
/// most kVerifyMaxNodes nodes are checked; a pair found isomorphic throws
/// ContractError. An odd trailing graph stays in the pool and is reported as
/// a warning.
PairDataset pairs_from_sequence(std::vector<Graph> graphs, std::string_view origin);

/// Samples `count` pool graphs without replacement and pairs each with a
/// random relabeling of itself (ground truth isomorphic, origin "augmented").
/// Throws ContractError if count exceeds the pool or a sampled graph is empty.
void add_iso_pairs(PairDataset& ds, std::size_t count, std::uint64_t seed);

/// Fresh dataset holding `graphs` as its pool plus `count` augmented pairs.
PairDataset augment_with_iso_pairs(std::vector<Graph> graphs, std::size_t count, std::uint64_t seed);

/// Relabels pair origins from a "Name:count,Name:count" list applied to
/// consecutive pairs, e.g. "Basics:60,Regular:140,Extension:100,CFI:100".
/// Throws ContractError when the counts exceed the number of pairs.
void assign_categories(PairDataset& ds, std::string_view categories);

}  // namespace isolab
