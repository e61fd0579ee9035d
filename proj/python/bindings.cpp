#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "promptrec/dataset.hpp"
#include "promptrec/error.hpp"
#include "promptrec/evaluation.hpp"
#include "promptrec/generator.hpp"
#include "promptrec/matrix.hpp"
#include "promptrec/recommender.hpp"
#include "promptrec/similarity.hpp"
#include "promptrec/text_similarity.hpp"

namespace py = pybind11;
using namespace promptrec;

namespace {

DedupPolicy dedup_from(const std::string& name) {
  auto p = parse_dedup_policy(name);
  if (!p) throw InvalidArgument("unknown dedup policy '" + name + "'");
  return *p;
}

py::dict rec_to_dict(const Recommendation& r) {
  py::dict d;
  d["id"] = r.target;
  d["text"] = r.text;
  d["predicted"] = r.predicted;
  d["rank"] = r.rank;
  d["provenance"] = std::string(to_string(r.provenance));
  d["neighbor_count"] = r.neighbor_count;
  return d;
}

py::list recs_to_list(const std::vector<Recommendation>& recs) {
  py::list out;
  for (const auto& r : recs) out.append(rec_to_dict(r));
  return out;
}

std::vector<PredictionPair> make_pairs(const std::vector<double>& actual,
                                       const std::vector<double>& predicted) {
  if (actual.size() != predicted.size()) throw InvalidArgument("length mismatch");
  std::vector<PredictionPair> pairs;
  for (std::size_t i = 0; i < actual.size(); ++i) pairs.push_back({actual[i], predicted[i], 0, 0});
  return pairs;
}

// Matrix plus similarity model, addressed by prompt text.
class Engine {
 public:
  Engine(const RatingDataset& dataset, std::size_t k, std::size_t min_support,
         const std::string& dedup)
      : matrix_(RatingMatrix::build(dataset, dedup_from(dedup))),
        model_(SimilarityModel::build(matrix_, min_support, k)) {}

  std::optional<double> similarity(const std::string& a, const std::string& b) const {
    return model_.similarity(id(a), id(b));
  }

  py::dict predict(const std::string& context, const std::string& target) const {
    return rec_to_dict(promptrec::predict(model_, matrix_, id(context), id(target)));
  }

  py::list recommend(const std::string& context, std::size_t n, std::optional<double> threshold,
                     bool include_rated) const {
    RecommendOptions options;
    options.threshold = threshold;
    options.include_rated = include_rated;
    auto found = matrix_.catalog().find(context);
    // Unknown text maps past the catalog and takes the popularity path.
    const PromptId context_id =
        found ? *found : static_cast<PromptId>(matrix_.catalog().size());
    return recs_to_list(recommend_top_n(model_, matrix_, context_id, n, options));
  }

  py::list popular(std::size_t n, std::size_t min_received) const {
    return recs_to_list(fallback_popular(matrix_, n, min_received));
  }

  std::size_t pair_count() const { return model_.pair_count(); }
  std::optional<double> global_mean() const { return matrix_.global_mean(); }

 private:
  PromptId id(const std::string& text) const {
    auto found = matrix_.catalog().find(text);
    if (!found) throw InvalidArgument("unknown prompt: " + text);
    return *found;
  }

  RatingMatrix matrix_;
  SimilarityModel model_;
};

}  // namespace

PYBIND11_MODULE(_promptrec, m) {
  m.doc() = "Item-item collaborative filtering for prompt recommendation";

  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<RatingDataset>(m, "Dataset")
      .def(py::init<>())
      .def("__len__", &RatingDataset::size)
      .def(
          "add",
          [](RatingDataset& d, const std::string& context, const std::string& target,
             double rating) { d.add(context, target, rating); },
          py::arg("context"), py::arg("target"), py::arg("rating"))
      .def("records",
           [](const RatingDataset& d) {
             py::list out;
             for (const auto& r : d.records()) {
               out.append(py::make_tuple(d.catalog().text(r.context), d.catalog().text(r.target),
                                         r.rating));
             }
             return out;
           })
      .def("prompts",
           [](const RatingDataset& d) {
             std::vector<std::string> out;
             for (const auto& p : d.catalog().prompts()) out.push_back(p.text);
             return out;
           })
      .def("to_csv", [](const RatingDataset& d) { return format_dataset(d); })
      .def("save", [](const RatingDataset& d, const std::string& path) { save_dataset(d, path); });

  m.def("load_dataset", [](const std::string& path) { return load_dataset(path); }, py::arg("path"));
  m.def("parse_dataset", [](const std::string& csv) { return parse_dataset(csv); }, py::arg("csv"));
  m.def(
      "generate_dataset",
      [](std::size_t n_entries, std::size_t n_prompts, std::uint64_t seed, bool unique_pairs) {
        GeneratorConfig c;
        c.n_entries = n_entries;
        c.n_prompts = n_prompts;
        c.seed = seed;
        c.unique_pairs = unique_pairs;
        return generate_dataset(c);
      },
      py::arg("n_entries") = 3612, py::arg("n_prompts") = 60, py::arg("seed") = 1,
      py::arg("unique_pairs") = false);

  py::class_<Engine>(m, "Engine")
      .def(py::init<const RatingDataset&, std::size_t, std::size_t, const std::string&>(),
           py::arg("dataset"), py::arg("k") = SimilarityModel::kDefaultNeighbors,
           py::arg("min_support") = SimilarityModel::kDefaultMinSupport,
           py::arg("dedup") = "mean")
      .def("similarity", &Engine::similarity, py::arg("a"), py::arg("b"))
      .def("predict", &Engine::predict, py::arg("context"), py::arg("target"))
      .def("recommend", &Engine::recommend, py::arg("context"), py::arg("n") = 10,
           py::arg("threshold") = py::none(), py::arg("include_rated") = false)
      .def("popular", &Engine::popular, py::arg("n") = 10, py::arg("min_received") = 1)
      .def_property_readonly("pair_count", &Engine::pair_count)
      .def_property_readonly("global_mean", &Engine::global_mean);

  m.def(
      "nearest_known_prompt",
      [](const std::string& text, const std::vector<std::string>& prompts, double min_score) {
        PromptCatalog catalog;
        for (const auto& p : prompts) catalog.intern(p);
        const MatchResult r = nearest_known_prompt(text, catalog, min_score);
        py::dict d;
        d["matched"] = r.matched ? py::object(py::str(r.matched->text)) : py::object(py::none());
        d["score"] = r.score;
        d["method"] = std::string(to_string(r.method));
        return d;
      },
      py::arg("text"), py::arg("prompts"), py::arg("min_score") = kDefaultMinScore);

  m.def("mae", [](const std::vector<double>& a, const std::vector<double>& p) {
    return mae(make_pairs(a, p));
  }, py::arg("actual"), py::arg("predicted"));
  m.def("rmse", [](const std::vector<double>& a, const std::vector<double>& p) {
    return rmse(make_pairs(a, p));
  }, py::arg("actual"), py::arg("predicted"));
  m.def("f1", &f1, py::arg("precision"), py::arg("recall"));

  m.def(
      "cross_validate_json",
      [](const RatingDataset& dataset, std::size_t folds, std::size_t top_n, double threshold,
         std::uint64_t seed, std::size_t k, std::size_t min_support) {
        EvalConfig c;
        c.folds = folds;
        c.top_n = top_n;
        c.threshold = threshold;
        c.seed = seed;
        c.k_neighbors = k;
        c.min_support = min_support;
        EvalReport report;
        {
          py::gil_scoped_release release;
          report = cross_validate(dataset, c);
        }
        return to_json(report).dump();
      },
      py::arg("dataset"), py::arg("folds") = 10, py::arg("top_n") = 10, py::arg("threshold") = 3.0,
      py::arg("seed") = 1, py::arg("k") = SimilarityModel::kDefaultNeighbors,
      py::arg("min_support") = SimilarityModel::kDefaultMinSupport);
}
