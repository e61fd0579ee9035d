#include "promptrec/generator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <unordered_set>
#include <vector>

#include "portable_rng.hpp"
#include "promptrec/error.hpp"

namespace promptrec {
namespace {

constexpr std::array<std::string_view, 8> kVerbs = {
    "Design", "Build", "Develop", "Create", "Generate", "Train", "Implement", "Propose",
};

constexpr std::array<std::string_view, 16> kArtifacts = {
    "a recommendation system",
    "an image recognition system",
    "a sentiment analysis model",
    "a fraud detection algorithm",
    "a chatbot",
    "an ML model for healthcare resource allocation",
    "a predictive model for environmental impact analysis",
    "an AI-based tutoring system",
    "an NLP model for email filtering",
    "a credit scoring model",
    "a hiring assistant",
    "a speech recognition pipeline",
    "a medical diagnosis classifier",
    "a content moderation tool",
    "a traffic forecasting model",
    "a customer churn predictor",
};

// Each inner array is one latent theme; prompts sharing a theme rate each
// other higher on average.
constexpr std::array<std::array<std::string_view, 4>, 6> kConstraints = {{
    {"that avoids bias", "minimizing gender bias", "preventing racial profiling",
     "with demographic parity checks"},
    {"ensuring fairness", "with equitable outcomes across groups", "that treats users equally",
     "with fairness audits"},
    {"with privacy constraints", "that is privacy-preserving", "using differential privacy",
     "with strict data minimization"},
    {"with transparent decision logic", "that explains its predictions",
     "with interpretable features", "documenting its limitations"},
    {"that supports diverse language inclusivity", "accessible to users with disabilities",
     "serving low-resource communities", "with inclusive design reviews"},
    {"with human oversight", "with clear accountability logs", "that can be safely shut down",
     "with harm reporting channels"},
}};

constexpr std::size_t kConstraintCount = kConstraints.size() * kConstraints[0].size();

struct Template {
  std::size_t verb;
  std::size_t artifact;
  std::size_t constraint;  // flattened theme * 4 + variant
};

std::string render(const Template& t) {
  const auto theme = t.constraint / kConstraints[0].size();
  const auto variant = t.constraint % kConstraints[0].size();
  std::string s;
  s += kVerbs[t.verb];
  s += ' ';
  s += kArtifacts[t.artifact];
  s += ' ';
  s += kConstraints[theme][variant];
  s += '.';
  return s;
}

double round2(double x) { return std::round(x * 100.0) / 100.0; }

}  // namespace

std::size_t generator_capacity() { return kVerbs.size() * kArtifacts.size() * kConstraintCount; }

int generated_theme(std::string_view prompt_text) {
  for (std::size_t theme = 0; theme < kConstraints.size(); ++theme) {
    for (auto phrase : kConstraints[theme]) {
      std::string tail = std::string(phrase) + ".";
      if (prompt_text.size() >= tail.size() &&
          prompt_text.substr(prompt_text.size() - tail.size()) == tail) {
        return static_cast<int>(theme);
      }
    }
  }
  return -1;
}

RatingDataset generate_dataset(const GeneratorConfig& config) {
  if (config.n_entries < 1) throw InvalidArgument("n_entries must be at least 1");
  if (config.n_prompts < 2) throw InvalidArgument("n_prompts must be at least 2");
  if (config.n_prompts > generator_capacity()) {
    throw InvalidArgument("n_prompts exceeds the " + std::to_string(generator_capacity()) +
                          " distinct prompts the template grammar can produce");
  }
  const std::size_t max_pairs = config.n_prompts * (config.n_prompts - 1);
  if (config.unique_pairs && config.n_entries > max_pairs) {
    throw InvalidArgument(std::to_string(config.n_prompts) + " prompts yield only " +
                          std::to_string(max_pairs) + " distinct directed pairs");
  }

  detail::PortableRng rng(config.seed);

  // Distinct prompt templates; themes cycle so every cluster is populated.
  std::vector<Template> prompts;
  std::vector<std::size_t> theme_of;
  std::unordered_set<std::size_t> used;
  const std::size_t per_theme = kConstraints[0].size();
  while (prompts.size() < config.n_prompts) {
    std::size_t theme = prompts.size() % kConstraints.size();
    Template t{rng.below(kVerbs.size()), rng.below(kArtifacts.size()),
               theme * per_theme + rng.below(per_theme)};
    std::size_t code = (t.verb * kArtifacts.size() + t.artifact) * kConstraintCount + t.constraint;
    if (!used.insert(code).second) continue;
    prompts.push_back(t);
    theme_of.push_back(theme);
  }

  std::vector<double> appeal(config.n_prompts);
  for (double& a : appeal) a = config.target_appeal_sd * rng.normal();

  RatingDataset dataset;
  std::vector<std::string> texts;
  texts.reserve(prompts.size());
  for (const auto& t : prompts) texts.push_back(render(t));

  std::unordered_set<std::size_t> seen_pairs;
  while (dataset.size() < config.n_entries) {
    std::size_t c = rng.below(config.n_prompts);
    std::size_t t = rng.below(config.n_prompts - 1);
    if (t >= c) ++t;
    if (config.unique_pairs && !seen_pairs.insert(c * config.n_prompts + t).second) continue;

    double mean = config.base_rating + appeal[t] +
                  (theme_of[c] == theme_of[t] ? config.cluster_bonus : 0.0);
    double rating = round2(std::clamp(mean + config.noise_sd * rng.normal(), kMinRating, kMaxRating));
    dataset.add(texts[c], texts[t], rating);
  }
  return dataset;
}

}  // namespace promptrec
