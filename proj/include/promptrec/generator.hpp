#pragma once

#include <cstdint>

#include "promptrec/dataset.hpp"

namespace promptrec {

struct GeneratorConfig {
  std::size_t n_entries = 3612;
  std::size_t n_prompts = 60;
  std::uint64_t seed = 1;
  // Forbid repeated (context, target) pairs.
  bool unique_pairs = false;

  // Latent rating model: base + cluster bonus (same ethical theme) + per-target
  // appeal + Gaussian noise, clamped to [1, 5] and rounded to 2 decimals.
  double base_rating = 3.1;
  double cluster_bonus = 0.45;
  double target_appeal_sd = 0.15;
  double noise_sd = 1.15;
};

// Number of distinct prompt sentences the template grammar can produce.
std::size_t generator_capacity();

// Deterministic for a fixed config on every platform: uses only the
// mt19937_64 bit stream, never the implementation-defined distributions.
RatingDataset generate_dataset(const GeneratorConfig& config);

// Ethical theme (latent cluster) of a generated prompt, or -1 when the text
// does not come from the grammar.
int generated_theme(std::string_view prompt_text);

}  // namespace promptrec
