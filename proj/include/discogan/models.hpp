#pragma once

#include <optional>
#include <string>
#include <vector>

#include "discogan/mlp.hpp"

namespace discogan {

enum class VariantKind { kStandardGan, kReconGan, kDiscoGan };

// "standard", "recon", "disco".
std::string to_string(VariantKind kind);
VariantKind parse_variant(const std::string& text);

struct Network {
  MlpSpec spec;
  MlpParams params;

  friend bool operator==(const Network&, const Network&) = default;
};

struct NetDims {
  std::vector<std::size_t> gen_hidden{64, 64};
  std::vector<std::size_t> disc_hidden{128, 128, 128, 128};
  Activation hidden_activation = Activation::relu();
  Activation gen_output_activation = Activation::relu();

  friend bool operator==(const NetDims&, const NetDims&) = default;
};

// Every network is stored once. The DiscoGAN B-side cycle reads g_ab and g_ba
// from the same slots as the A-side, so an update through either path is an
// update of the single shared generator.
struct ModelSet {
  VariantKind kind = VariantKind::kDiscoGan;
  Network g_ab;
  std::optional<Network> g_ba;
  std::optional<Network> d_a;
  Network d_b;

  std::size_t network_count() const {
    return 2 + (g_ba ? 1 : 0) + (d_a ? 1 : 0);
  }

  friend bool operator==(const ModelSet&, const ModelSet&) = default;
};

// 2 -> h1 -> h2 -> 2; hidden activation then the configured output activation.
Network build_generator(const NetDims& dims, Rng& rng);
// 2 -> h1 .. h4 -> 1 with a sigmoid output.
Network build_discriminator(const NetDims& dims, Rng& rng);
// Initialisation order: g_ab, g_ba, d_a, d_b (absent networks draw nothing).
ModelSet build_variant(VariantKind kind, const NetDims& dims, Rng& rng);

Matrix translate(const Network& gen, const Matrix& x);

struct Roundtrip {
  Matrix translated;
  Matrix reconstructed;
};
Roundtrip roundtrip(const Network& g_ab, const Network& g_ba, const Matrix& x);

}  // namespace discogan
