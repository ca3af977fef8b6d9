#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "isolab/dataset.hpp"
#include "isolab/hash.hpp"
#include "isolab/models.hpp"
#include "isolab/transforms.hpp"
#include "isolab/wl.hpp"

namespace isolab {

/// Maps a graph to either an exact key (WL signatures) or a real vector
/// (model embeddings). Exact keys are compared for equality; vectors are
/// grouped by tolerance clustering.
struct Embedder {
    std::string name;
    std::function<ColorKey(const Graph&)> exact;
    std::function<Embedding(const Graph&)> approximate;

    bool is_exact() const { return static_cast<bool>(exact); }
};

/// k = 1 gives 1-WL; k = 2, 3 give oblivious k-WL.
Embedder wl_embedder(unsigned k, double quant_eps = kDefaultQuantEps,
                     std::uint64_t budget = WLkOptions{}.budget);

/// Untrained model whose weights are drawn for the graph's feature width.
Embedder model_embedder(Arch arch, std::uint64_t seed);

/// Single-linkage clustering: i and j share a class when a chain of vectors
/// with pairwise L-infinity distance <= eps joins them. Class ids are numbered
/// by first member. All vectors must have the same length.
std::vector<std::size_t> cluster_embeddings(std::span<const Embedding> embeddings, double eps);

/// Number of distinct class ids.
std::size_t ecc(std::span<const std::size_t> classes);

struct EvalOptions {
    double cluster_eps = 1e-5;
    unsigned threads = 1;
    bool timing = false;  // otherwise `seconds` is reported as 0
};

struct ReportRow {
    TransformSpec transform;
    std::string embedder;
    std::string origin;        // empty for the whole dataset
    std::size_t ecc = 0;
    std::size_t fn = 0;
    std::size_t fp = 0;
    std::size_t pairs = 0;     // pairs evaluated
    std::size_t excluded = 0;  // pairs skipped because a graph failed
    std::size_t unverified = 0;
    double seconds = 0.0;
    std::vector<std::string> errors;
};

/// Transforms and embeds every pool graph, then classifies each pair as
/// isomorphic iff both graphs land in the same class. fp counts isomorphic
/// pairs split apart, fn non-isomorphic pairs merged, ecc the classes over all
/// successfully embedded graphs. A graph whose transform or embedding throws
/// excludes every pair it belongs to.
ReportRow evaluate_pairs(const PairDataset& ds, const TransformSpec& transform,
                         const Embedder& embedder, const EvalOptions& options = {});

/// Same as evaluate_pairs but with one extra row per pair origin, in order of
/// first appearance, sharing the whole-dataset embedding classes.
std::vector<ReportRow> evaluate_by_origin(const PairDataset& ds, const TransformSpec& transform,
                                          const Embedder& embedder, const EvalOptions& options = {});

}  // namespace isolab
