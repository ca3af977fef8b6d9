#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isolab/dataset.hpp"
#include "isolab/graph.hpp"

namespace isolab {

enum class Family {
    cycle,
    path,
    star,
    complete,
    disjoint_cycles,
    erdos_renyi,
    rook4x4,
    shrikhande,
};

std::string_view family_token(Family family);
/// Throws ContractError for an unknown name.
Family parse_family(std::string_view token);

struct GeneratorParams {
    std::size_t n = 0;       // node count; cycle length for disjoint_cycles
    std::size_t copies = 2;  // disjoint_cycles only
    double p = 0.5;          // erdos_renyi only
};

/// Canonical constructions. star(n) has center 0 and n - 1 leaves. erdos_renyi
/// draws each pair u < v in lexicographic order with probability p from the
/// seeded generator. Throws ContractError for invalid parameters.
Graph generate(Family family, const GeneratorParams& params = {}, std::uint64_t seed = 0);

struct SrgParameters {
    std::size_t n = 0, k = 0, lambda = 0, mu = 0;
    friend bool operator==(const SrgParameters&, const SrgParameters&) = default;
};

/// (n, k, lambda, mu) if g is strongly regular, counted directly.
std::optional<SrgParameters> srg_parameters(const Graph& g);

struct ManifestEntry {
    std::string name;
    std::string first;   // generator description, e.g. "cycle(n=6)"
    std::string second;
    std::vector<std::string> expectations;
};

/// Machine-checkable expectations understood by verify: "isomorphic",
/// "non-isomorphic", "1-WL-indistinguishable", "2-WL-indistinguishable",
/// "3-WL-indistinguishable", "srg(16,6,2,2)".
struct CorpusManifest {
    std::vector<ManifestEntry> entries;

    std::string to_json() const;
};

/// Manifest of the bundled hard pairs, in dataset pair order.
CorpusManifest hard_pair_manifest();

/// Checks every expectation of `manifest` against the matching pair of `ds`;
/// returns the failures (empty when everything holds).
std::vector<std::string> verify_manifest(const CorpusManifest& manifest, const PairDataset& ds);

/// (C6, 2C3), (C8, 2C4), (rook4x4, Shrikhande) non-isomorphic and (K4, pi(K4))
/// isomorphic. Every manifest expectation is verified on each call; a failure
/// throws CorpusIntegrityError.
PairDataset hard_pair_library();

enum class FileFormat { graph6, edge_list };

/// Throws ContractError for anything but graph6, edge_list.
FileFormat parse_file_format(std::string_view token);

/// One graph per non-empty line (graph6) or per blank-line separated block
/// (edge list). Parse errors carry the file line number.
std::vector<Graph> parse_dataset(std::string_view text, FileFormat format);

/// Reads and parses a file; throws Error when it cannot be read.
std::vector<Graph> load_dataset(const std::filesystem::path& path, FileFormat format);

}  // namespace isolab
