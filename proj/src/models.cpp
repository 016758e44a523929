#include "discogan/models.hpp"

#include "discogan/errors.hpp"

namespace discogan {

std::string to_string(VariantKind kind) {
  switch (kind) {
    case VariantKind::kStandardGan:
      return "standard";
    case VariantKind::kReconGan:
      return "recon";
    case VariantKind::kDiscoGan:
      return "disco";
  }
  return "?";
}

VariantKind parse_variant(const std::string& text) {
  if (text == "standard") return VariantKind::kStandardGan;
  if (text == "recon") return VariantKind::kReconGan;
  if (text == "disco") return VariantKind::kDiscoGan;
  throw ParameterError("unknown variant '" + text + "' (expected standard, recon or disco)");
}

Network build_generator(const NetDims& dims, Rng& rng) {
  if (dims.gen_hidden.size() != 2) {
    throw ParameterError("build_generator: expected 2 hidden widths");
  }
  MlpSpec spec{{2, dims.gen_hidden[0], dims.gen_hidden[1], 2},
               {dims.hidden_activation, dims.hidden_activation, dims.gen_output_activation}};
  spec.validate();
  return {spec, init_params(spec, rng)};
}

Network build_discriminator(const NetDims& dims, Rng& rng) {
  if (dims.disc_hidden.size() != 4) {
    throw ParameterError("build_discriminator: expected 4 hidden widths");
  }
  MlpSpec spec;
  spec.layer_dims.push_back(2);
  for (std::size_t h : dims.disc_hidden) {
    spec.layer_dims.push_back(h);
    spec.activations.push_back(dims.hidden_activation);
  }
  spec.layer_dims.push_back(1);
  spec.activations.push_back(Activation::sigmoid());
  spec.validate();
  return {spec, init_params(spec, rng)};
}

ModelSet build_variant(VariantKind kind, const NetDims& dims, Rng& rng) {
  ModelSet set;
  set.kind = kind;
  set.g_ab = build_generator(dims, rng);
  if (kind != VariantKind::kStandardGan) set.g_ba = build_generator(dims, rng);
  if (kind == VariantKind::kDiscoGan) set.d_a = build_discriminator(dims, rng);
  set.d_b = build_discriminator(dims, rng);
  return set;
}

Matrix translate(const Network& gen, const Matrix& x) {
  if (x.cols() != 2) throw ShapeError("translate: expected 2 input columns");
  return mlp_predict(gen.spec, gen.params, x);
}

Roundtrip roundtrip(const Network& g_ab, const Network& g_ba, const Matrix& x) {
  Roundtrip r;
  r.translated = translate(g_ab, x);
  r.reconstructed = translate(g_ba, r.translated);
  return r;
}

}  // namespace discogan
