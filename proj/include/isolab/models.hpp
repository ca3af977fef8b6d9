#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "isolab/graph.hpp"
#include "isolab/hash.hpp"

namespace isolab {

enum class Arch { gin, pna, ds };

std::string_view arch_token(Arch arch);

/// Fully connected layer, weight stored out x in row-major.
struct Dense {
    std::size_t in = 0;
    std::size_t out = 0;
    std::vector<double> weight;
    std::vector<double> bias;

    friend bool operator==(const Dense&, const Dense&) = default;
};

/// Two dense layers, each followed by tanh.
struct Mlp {
    Dense first;
    Dense second;

    friend bool operator==(const Mlp&, const Mlp&) = default;
};

/// Untrained, seeded model weights.
///
/// GIN and PNA hold one MLP per message-passing layer (4 layers). DeepSets
/// holds two MLPs, the per-element encoder and the readout decoder, which
/// together give the same 4 dense layers.
struct ModelParams {
    Arch arch = Arch::gin;
    std::size_t layers = 4;
    std::size_t input_dim = 1;
    std::size_t hidden_dim = 16;
    std::size_t output_dim = 16;
    std::vector<Mlp> mlps;
    std::vector<double> epsilon;  // GIN only: one per layer
    std::uint64_t seed = 0;

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

using Embedding = std::vector<double>;

/// Weights uniform in [-a, a] with a = sqrt(6 / (fan_in + fan_out)) (biases use
/// their layer's bound), GIN epsilons uniform in [0, 0.1]. Fully determined by
/// (arch, input_dim, seed). Throws ContractError for input_dim = 0.
ModelParams init_model(Arch arch, std::size_t input_dim, std::uint64_t seed);

/// Per-node states before readout (n x hidden_dim, row-major). For DeepSets
/// these are the encoder outputs.
std::vector<double> node_states(const ModelParams& model, const Graph& g);

/// Graph embedding: node states summed in ascending node order, then (for
/// DeepSets) the decoder MLP. Throws ContractError when the feature width does
/// not match input_dim or the graph is empty.
Embedding forward(const ModelParams& model, const Graph& g);

/// Hash of the embedding on the round(x / eps) grid. Only a pre-grouping key:
/// near-equal vectors straddling a cell boundary get different keys.
ColorKey embedding_key(std::span<const double> embedding, double eps);

}  // namespace isolab
