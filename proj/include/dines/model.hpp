#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dines/decoder.hpp"
#include "dines/encoder.hpp"
#include "dines/graph.hpp"

namespace dines {

/// full: pairwise decoder + factor discriminator.
/// no-ssl: pairwise decoder only.
/// no-ssl-no-pairwise: concatenation decoder only.
/// entangled: concatenation decoder with K forced to 1.
enum class Variant { Full, NoSsl, NoSslNoPairwise, Entangled };

std::optional<Variant> parse_variant(std::string_view name);
std::string variant_name(Variant v);
bool uses_pairwise_decoder(Variant v);
bool uses_discriminator(Variant v);

struct ModelConfig {
  EncoderConfig encoder;
  Variant variant = Variant::Full;

  /// Copy with the variant's constraints applied (K = 1 for entangled).
  ModelConfig resolved() const;
};

class Model {
 public:
  /// Draws every parameter from one generator seeded with `seed`: encoder
  /// first, then decoder, then discriminator.
  static Model initialize(const ModelConfig& config, std::uint64_t seed);

  const ModelConfig& config() const { return config_; }
  const EncoderParams& encoder() const { return encoder_; }
  const DecoderParams& decoder() const { return decoder_; }

  /// Every trainable tensor with a stable name, in a fixed order.
  std::vector<NamedTensor> parameters() const;

  DisentangledEmbedding embed(const SignedDigraph& g, const Tensor& features) const;
  /// One logit per edge, through the decoder chosen by the variant.
  Tensor logits(const DisentangledEmbedding& z, std::span<const SignedEdge> edges) const;
  /// sigmoid(logits) without building a gradient graph for the caller.
  std::vector<double> predict(const SignedDigraph& g, const Tensor& features,
                              std::span<const SignedEdge> edges) const;

 private:
  ModelConfig config_;
  EncoderParams encoder_;
  DecoderParams decoder_;
};

}  // namespace dines
