#include "dines/model.hpp"

#include <random>

#include "dines/error.hpp"
#include "dines/ops.hpp"

namespace dines {

std::optional<Variant> parse_variant(std::string_view name) {
  if (name == "full") return Variant::Full;
  if (name == "no-ssl") return Variant::NoSsl;
  if (name == "no-ssl-no-pairwise") return Variant::NoSslNoPairwise;
  if (name == "entangled") return Variant::Entangled;
  return std::nullopt;
}

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::Full: return "full";
    case Variant::NoSsl: return "no-ssl";
    case Variant::NoSslNoPairwise: return "no-ssl-no-pairwise";
    case Variant::Entangled: return "entangled";
  }
  return "unknown";
}

bool uses_pairwise_decoder(Variant v) { return v == Variant::Full || v == Variant::NoSsl; }
bool uses_discriminator(Variant v) { return v == Variant::Full; }

ModelConfig ModelConfig::resolved() const {
  ModelConfig out = *this;
  if (variant == Variant::Entangled) out.encoder.factors = 1;
  return out;
}

Model Model::initialize(const ModelConfig& config, std::uint64_t seed) {
  Model m;
  m.config_ = config.resolved();
  const auto& enc = m.config_.encoder;
  std::mt19937_64 rng(seed);
  m.encoder_ = EncoderParams::initialize(enc, rng);

  const std::size_t k = enc.factors;
  const std::size_t d_out = enc.width(enc.layers);
  const std::size_t c = d_out / k;
  if (uses_pairwise_decoder(m.config_.variant)) {
    m.decoder_.pairwise = glorot_uniform(k, k, rng);
  } else {
    const Tensor w = glorot_uniform(2 * d_out, 1, rng);
    m.decoder_.concat =
        Tensor::from_values({2 * d_out}, {w.values().begin(), w.values().end()}, true);
  }
  if (uses_discriminator(m.config_.variant)) {
    m.decoder_.disc_weight = glorot_uniform(k, c, rng);
    m.decoder_.disc_bias = Tensor::zeros({k}, true);
  }
  return m;
}

std::vector<NamedTensor> Model::parameters() const {
  auto out = encoder_.named();
  for (auto& p : decoder_.named()) out.push_back(std::move(p));
  return out;
}

DisentangledEmbedding Model::embed(const SignedDigraph& g, const Tensor& features) const {
  return encode_all(g, features, config_.encoder, encoder_);
}

Tensor Model::logits(const DisentangledEmbedding& z, std::span<const SignedEdge> edges) const {
  const Tensor stacked = z.stacked();
  if (uses_pairwise_decoder(config_.variant)) {
    return pairwise_logits(stacked, z.factor_count(), edges, decoder_.pairwise);
  }
  return concat_logits(stacked, edges, decoder_.concat);
}

std::vector<double> Model::predict(const SignedDigraph& g, const Tensor& features,
                                   std::span<const SignedEdge> edges) const {
  const Tensor p = sigmoid(logits(embed(g, features), edges));
  return {p.values().begin(), p.values().end()};
}

}  // namespace dines
