#pragma once

#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "promptrec/dataset.hpp"

namespace oracle {

struct Instance {
  promptrec::RatingDataset dataset;
  Dense dense;
  std::vector<std::string> keys;  // normalized text by id
};

// Random sparse instance: `prompts` prompts, each directed off-diagonal cell
// present with probability `density`, continuous ratings in [1, 5] and an
// occasional duplicate observation.
inline Instance random_instance(std::mt19937_64& rng, std::size_t prompts, double density) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Instance inst;
  for (std::size_t c = 0; c < prompts; ++c) {
    for (std::size_t t = 0; t < prompts; ++t) {
      if (c == t || unit(rng) >= density) continue;
      const int copies = unit(rng) < 0.1 ? 2 : 1;
      for (int k = 0; k < copies; ++k) {
        inst.dataset.add("prompt " + std::to_string(c), "prompt " + std::to_string(t),
                         1.0 + 4.0 * unit(rng));
      }
    }
  }
  std::vector<Obs> obs;
  for (const auto& r : inst.dataset.records()) obs.push_back({r.context, r.target, r.rating});
  inst.dense = group_by_mean(inst.dataset.catalog().size(), obs);
  for (promptrec::PromptId id = 0; id < inst.dataset.catalog().size(); ++id) {
    inst.keys.push_back(inst.dataset.catalog().normalized(id));
  }
  return inst;
}

}  // namespace oracle
