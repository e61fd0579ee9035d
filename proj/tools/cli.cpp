#include "cli.hpp"

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "promptrec/dataset.hpp"
#include "promptrec/evaluation.hpp"
#include "promptrec/generator.hpp"
#include "promptrec/http_api.hpp"
#include "promptrec/recommender.hpp"
#include "promptrec/service.hpp"
#include "promptrec/similarity.hpp"
#include "promptrec/text_similarity.hpp"

namespace promptrec {
namespace {

const std::map<std::string, DedupPolicy> kDedupNames = {
    {"mean", DedupPolicy::kMean}, {"last", DedupPolicy::kLast}, {"first", DedupPolicy::kFirst}};
const std::map<std::string, PredictionRule> kRuleNames = {
    {"weighted-average", PredictionRule::kWeightedAverage},
    {"mean-centered", PredictionRule::kMeanCentered}};
const std::map<std::string, EmptyRatio> kEmptyNames = {{"one", EmptyRatio::kOne},
                                                       {"zero", EmptyRatio::kZero}};
const std::map<std::string, PrecisionDenominator> kDenominatorNames = {
    {"gated", PrecisionDenominator::kGated}, {"all-top-n", PrecisionDenominator::kAllTopN}};

template <typename T>
std::vector<std::string> names_of(const std::map<std::string, T>& m) {
  std::vector<std::string> out;
  for (const auto& [name, value] : m) out.push_back(name);
  return out;
}

struct GenerateArgs {
  GeneratorConfig config;
  std::string config_path;
  std::string out;
};

struct EvaluateArgs {
  EvalConfig config;
  std::vector<double> thresholds{3.0};
  std::string dedup = "mean";
  std::string rule = "weighted-average";
  std::string empty = "one";
  std::string denominator = "gated";
  std::string data;
  std::string format = "table";
  std::string out;
};

struct RecommendArgs {
  std::string data;
  std::string prompt;
  std::size_t n = 10;
  std::optional<double> threshold;
  std::size_t k = SimilarityModel::kDefaultNeighbors;
  std::size_t min_support = SimilarityModel::kDefaultMinSupport;
  std::string dedup = "mean";
  double min_score = kDefaultMinScore;
  std::size_t min_received = 1;
  bool include_rated = false;
  std::string format = "text";
};

struct ServeArgs {
  ServiceConfig config;
  std::string dedup = "mean";
  bool no_write = false;
};

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write " + path);
  f << text;
}

int run_generate(GenerateArgs& args, std::ostream& out) {
  if (!args.config_path.empty()) {
    std::ifstream f(args.config_path);
    if (!f) throw IoError("cannot open generator config " + args.config_path);
    const auto j = nlohmann::json::parse(f);
    auto& c = args.config;
    c.n_entries = j.value("n_entries", c.n_entries);
    c.n_prompts = j.value("n_prompts", c.n_prompts);
    c.seed = j.value("seed", c.seed);
    c.unique_pairs = j.value("unique_pairs", c.unique_pairs);
  }
  const RatingDataset dataset = generate_dataset(args.config);
  write_output(args.out, format_dataset(dataset), out);
  return 0;
}

int run_evaluate(EvaluateArgs& args, std::ostream& out) {
  args.config.dedup = kDedupNames.at(args.dedup);
  args.config.rule = kRuleNames.at(args.rule);
  args.config.empty = kEmptyNames.at(args.empty);
  args.config.denominator = kDenominatorNames.at(args.denominator);
  const RatingDataset dataset = load_dataset(args.data);
  std::vector<EvalReport> reports;
  for (double t : args.thresholds) {
    EvalConfig config = args.config;
    config.threshold = t;
    reports.push_back(cross_validate(dataset, config));
  }
  std::string text;
  if (args.format == "json" || args.format == "both") {
    nlohmann::json j;
    if (reports.size() == 1) {
      j = to_json(reports.front());
    } else {
      j = nlohmann::json::array();
      for (const auto& r : reports) j.push_back(to_json(r));
    }
    text += j.dump(2) + "\n";
  }
  if (args.format == "table" || args.format == "both") text += format_table(reports);
  write_output(args.out, text, out);
  return 0;
}

int run_recommend(const RecommendArgs& args, std::ostream& out) {
  ServiceConfig config;
  config.dataset_path = args.data;
  config.k_neighbors = args.k;
  config.min_support = args.min_support;
  config.dedup = kDedupNames.at(args.dedup);
  config.min_score = args.min_score;
  config.min_received = args.min_received;
  config.include_rated = args.include_rated;
  config.write_through = false;
  if (!std::filesystem::exists(args.data)) throw IoError("cannot open dataset " + args.data);

  RecommenderService service(config);
  service.load();
  const RecommendResponse response = service.recommend(args.prompt, args.n, args.threshold);

  if (args.format == "json") {
    out << to_json(response).dump(2) << "\n";
    return 0;
  }
  const auto& match = response.resolved_prompt;
  char line[64];
  std::snprintf(line, sizeof line, "%.4f", match.score);
  out << "resolved: " << to_string(match.method);
  if (match.matched) out << " (" << line << ") " << match.matched->text;
  out << "\n";
  if (response.items.empty()) out << "no recommendations above threshold\n";
  for (const auto& item : response.items) {
    std::snprintf(line, sizeof line, "%3zu. %.4f  %-16s ", item.rank, item.predicted,
                  std::string(to_string(item.provenance)).c_str());
    out << line << item.text << "\n";
  }
  return 0;
}

extern "C" void handle_stop_signal(int) { stop_server(); }

int run_serve(ServeArgs& args, std::ostream& out) {
  args.config.dedup = kDedupNames.at(args.dedup);
  apply_listen_override(args.config);
  args.config.write_through = !args.no_write;
  RecommenderService service(args.config);
  service.load();
  std::signal(SIGINT, handle_stop_signal);
  std::signal(SIGTERM, handle_stop_signal);
  const Health h = service.health();
  const bool ok = run_server(service, args.config.host, args.config.port, [&](int port) {
    out << "listening on " << args.config.host << ":" << port << " (" << h.n_prompts
        << " prompts, " << h.n_ratings << " ratings)" << std::endl;
  });
  if (!ok) throw IoError("cannot listen on " + args.config.host + ":" +
                         std::to_string(args.config.port));
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Prompt recommendation via item-item collaborative filtering"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a synthetic prompt-rating CSV");
  generate->add_option("--entries", gen.config.n_entries, "Number of rating rows")
      ->check(CLI::PositiveNumber);
  generate->add_option("--prompts", gen.config.n_prompts, "Number of distinct prompts")
      ->check(CLI::Range(std::size_t{2}, generator_capacity()));
  generate->add_option("--seed", gen.config.seed, "Random seed");
  generate->add_flag("--unique", gen.config.unique_pairs, "Forbid repeated prompt pairs");
  generate->add_option("--config", gen.config_path, "JSON generator config")
      ->check(CLI::ExistingFile);
  generate->add_option("--out", gen.out, "Output CSV path (default: standard output)");

  EvaluateArgs ev;
  auto* evaluate = app.add_subcommand("evaluate", "K-fold cross-validation report");
  evaluate->add_option("--data", ev.data, "Dataset CSV")->required();
  evaluate->add_option("--folds", ev.config.folds, "Number of folds")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
  evaluate->add_option("--top-n", ev.config.top_n, "Recommendations per query")
      ->check(CLI::PositiveNumber);
  evaluate->add_option("--threshold", ev.thresholds, "Relevance threshold (repeatable)")
      ->check(CLI::Range(1.0, 5.0));
  evaluate->add_option("--seed", ev.config.seed, "Fold shuffle seed");
  evaluate->add_option("--k", ev.config.k_neighbors, "Neighbours per prediction")
      ->check(CLI::PositiveNumber);
  evaluate->add_option("--min-support", ev.config.min_support, "Minimum co-raters per pair")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
  evaluate->add_option("--dedup", ev.dedup, "Duplicate pair policy")
      ->check(CLI::IsMember(names_of(kDedupNames)));
  evaluate->add_option("--rule", ev.rule, "Prediction rule")
      ->check(CLI::IsMember(names_of(kRuleNames)));
  evaluate->add_option("--empty-ratio", ev.empty, "Value of 0/0 precision or recall")
      ->check(CLI::IsMember(names_of(kEmptyNames)));
  evaluate->add_option("--precision-denominator", ev.denominator,
                       "Items counted in the precision denominator")
      ->check(CLI::IsMember(names_of(kDenominatorNames)));
  evaluate->add_flag("--sequential", [&](std::int64_t) { ev.config.parallel = false; },
                     "Evaluate folds one at a time");
  evaluate->add_option("--format", ev.format, "table, json or both")
      ->check(CLI::IsMember({"table", "json", "both"}));
  evaluate->add_option("--out", ev.out, "Report path (default: standard output)");

  RecommendArgs rec;
  auto* recommend = app.add_subcommand("recommend", "Top-N follow-up prompts for one query");
  recommend->add_option("--data", rec.data, "Dataset CSV")->required();
  recommend->add_option("--prompt", rec.prompt, "Query prompt text")->required();
  recommend->add_option("--n", rec.n, "Number of recommendations")->check(CLI::PositiveNumber);
  recommend->add_option("--threshold", rec.threshold, "Drop predictions below this rating")
      ->check(CLI::Range(1.0, 5.0));
  recommend->add_option("--k", rec.k, "Neighbours per prediction")->check(CLI::PositiveNumber);
  recommend->add_option("--min-support", rec.min_support, "Minimum co-raters per pair")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
  recommend->add_option("--dedup", rec.dedup, "Duplicate pair policy")
      ->check(CLI::IsMember(names_of(kDedupNames)));
  recommend->add_option("--min-score", rec.min_score, "Lexical match floor")
      ->check(CLI::Range(0.0, 1.0));
  recommend->add_option("--min-received", rec.min_received, "Popularity list support floor")
      ->check(CLI::PositiveNumber);
  recommend->add_flag("--include-rated", rec.include_rated,
                      "Also rank prompts the query has already rated");
  recommend->add_option("--format", rec.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  ServeArgs srv;
  auto* serve = app.add_subcommand("serve", "Run the HTTP/JSON recommendation service");
  serve->add_option("--data", srv.config.dataset_path, "Dataset CSV (created on first rating)")
      ->required();
  serve->add_option("--host", srv.config.host, "Listen host");
  serve->add_option("--port", srv.config.port, "Listen port")->check(CLI::Range(0, 65535));
  serve->add_option("--k", srv.config.k_neighbors, "Neighbours per prediction")
      ->check(CLI::PositiveNumber);
  serve->add_option("--min-support", srv.config.min_support, "Minimum co-raters per pair")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
  serve->add_option("--dedup", srv.dedup, "Duplicate pair policy")
      ->check(CLI::IsMember(names_of(kDedupNames)));
  serve->add_option("--min-score", srv.config.min_score, "Lexical match floor")
      ->check(CLI::Range(0.0, 1.0));
  serve->add_option("--min-received", srv.config.min_received, "Popularity list support floor")
      ->check(CLI::PositiveNumber);
  serve->add_flag("--include-rated", srv.config.include_rated,
                  "Also rank prompts the query has already rated");
  serve->add_flag("--no-write", srv.no_write, "Keep new ratings in memory only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*generate) return run_generate(gen, out);
    if (*evaluate) return run_evaluate(ev, out);
    if (*recommend) return run_recommend(rec, out);
    if (*serve) return run_serve(srv, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace promptrec
