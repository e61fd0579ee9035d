#pragma once

// Table 1 rows of the public prompt-rating dataset snapshot, shared by tests.

#include <string>
#include <tuple>
#include <vector>

#include "promptrec/dataset.hpp"

namespace promptrec::testdata {

inline const std::vector<std::tuple<std::string, std::string, double>>& table1_rows() {
  static const std::vector<std::tuple<std::string, std::string, double>> rows = {
      {"Design a recommendation system that avoids bias.",
       "Design an image recognition system minimizing gender bias.", 1.25},
      {"Design a recommendation system that avoids bias.",
       "Create a predictive model for environmental impact analysis.", 3.09},
      {"Design a recommendation system that avoids bias.",
       "Generate an AI-based tutoring system ensuring fairness.", 2.85},
      {"Design a recommendation system that avoids bias.",
       "Develop an ML model for equitable healthcare resource allocation.", 2.52},
      {"Design a recommendation system that avoids bias.",
       "Generate an AI-based tutoring system ensuring fairness.", 1.25},
      {"Build a sentiment analysis model with privacy constraints.",
       "Design an image recognition system minimizing gender bias.", 1.78},
      {"Build a sentiment analysis model with privacy constraints.",
       "Design a recommendation system that avoids bias.", 2.24},
      {"Build a sentiment analysis model with privacy constraints.",
       "Generate an AI-based tutoring system ensuring fairness.", 4.47},
      {"Build a sentiment analysis model with privacy constraints.",
       "Build a chatbot that supports diverse language inclusivity.", 3.35},
      {"Build a sentiment analysis model with privacy constraints.",
       "Develop an ML model for equitable healthcare resource allocation.", 4.33},
      {"Develop an ML model for equitable healthcare resource allocation.",
       "Design a recommendation system that avoids bias.", 2.2},
      {"Develop an ML model for equitable healthcare resource allocation.",
       "Create a fraud detection algorithm preventing racial profiling.", 1.35},
      {"Develop an ML model for equitable healthcare resource allocation.",
       "Generate a privacy-preserving NLP model for email filtering.", 1.36},
      {"Develop an ML model for equitable healthcare resource allocation.",
       "Generate an AI-based tutoring system ensuring fairness.", 4.36},
      {"Develop an ML model for equitable healthcare resource allocation.",
       "Design an image recognition system minimizing gender bias.", 4.97},
  };
  return rows;
}

inline RatingDataset table1() {
  RatingDataset d;
  for (const auto& [c, t, r] : table1_rows()) d.add(c, t, r);
  return d;
}

}  // namespace promptrec::testdata
