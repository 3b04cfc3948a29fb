// strongties: strong-tie detection toolkit over layered weak/strong graphs.
// Subcommands: generate, score, evaluate, sweep, fixture, hll-squares.
// Every output file embeds its resolved configuration as '#' header comments
// plus a .meta.json sidecar; equal flags and seed reproduce files byte for
// byte regardless of --jobs.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "strongties/eval.hpp"
#include "strongties/fixture.hpp"
#include "strongties/graph.hpp"
#include "strongties/hll.hpp"
#include "strongties/logreg.hpp"
#include "strongties/motifs.hpp"
#include "strongties/oracle.hpp"
#include "strongties/planted.hpp"
#include "strongties/sweep.hpp"
#include "strongties/version.hpp"

namespace fs = std::filesystem;
using namespace strongties;

namespace {

std::string fmt_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

fs::path resolve_out(const std::string& path) {
  fs::path p(path);
  if (p.is_absolute()) return p;
  if (const char* dir = std::getenv("STRONGTIES_OUT_DIR"))
    return fs::path(dir) / p;
  return p;
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

void write_meta(const fs::path& out_path, const std::string& command,
                const nlohmann::json& config) {
  nlohmann::json meta;
  meta["command"] = command;
  meta["config"] = config;
  meta["version"] = kVersion;
  fs::path meta_path = out_path;
  meta_path += ".meta.json";
  write_file(meta_path, meta.dump(2) + "\n");
}

std::vector<std::string> config_comments(const nlohmann::json& config) {
  std::vector<std::string> lines;
  lines.push_back("strongties " + std::string(kVersion));
  for (const auto& [key, value] : config.items())
    lines.push_back(key + "=" + (value.is_string()
                                     ? value.get<std::string>()
                                     : value.dump()));
  return lines;
}

struct PlantedFlags {
  std::uint32_t n = 0;
  std::uint32_t c = 30;
  double p = 0.85;
  double q = 1.0;
  double r = -1.0;  // negative means "default ln(n)/n"
  std::string model = "single";

  PlantedConfig to_config(std::uint64_t seed) const {
    PlantedConfig cfg;
    cfg.n = n;
    cfg.c = c;
    cfg.p = p;
    cfg.q = q;
    cfg.r = r < 0.0 ? PlantedConfig::default_noise(n) : r;
    cfg.model = model == "double" ? PlantedModel::Double : PlantedModel::Single;
    cfg.seed = seed;
    return cfg;
  }
};

void add_planted_flags(CLI::App* cmd, PlantedFlags& flags, bool require_n) {
  auto* n_opt = cmd->add_option("--n", flags.n, "node count");
  if (require_n) n_opt->required();
  cmd->add_option("--c", flags.c, "expected community size");
  cmd->add_option("--p", flags.p, "acquaintance probability");
  cmd->add_option("--q", flags.q, "link-formation scale");
  cmd->add_option("--r", flags.r, "noise edge probability (default ln(n)/n)");
  cmd->add_option("--model", flags.model, "single | double")
      ->check(CLI::IsMember({"single", "double"}));
}

nlohmann::json planted_json(const PlantedConfig& cfg) {
  return {{"n", cfg.n},
          {"c", cfg.c},
          {"p", cfg.p},
          {"q", cfg.q},
          {"r", cfg.r},
          {"model", cfg.model == PlantedModel::Double ? "double" : "single"},
          {"seed", cfg.seed}};
}

int cmd_generate(const PlantedFlags& flags, std::uint64_t seed,
                 const std::string& out, const std::string& membership_out) {
  const PlantedConfig cfg = flags.to_config(seed);
  const PlantedGraph pg = generate_planted(cfg);

  const fs::path graph_path = resolve_out(out);
  const fs::path member_path = membership_out.empty()
                                   ? fs::path(graph_path.string() +
                                              ".membership.tsv")
                                   : resolve_out(membership_out);
  const nlohmann::json config = planted_json(cfg);
  std::string graph_text;
  for (const auto& line : config_comments(config))
    graph_text += "# " + line + "\n";
  graph_text += serialize_graph(pg.graph);
  write_file(graph_path, graph_text);
  write_file(member_path, serialize_memberships(pg));
  write_meta(graph_path, "generate", config);

  std::printf("nodes=%u weak_edges=%zu strong_edges=%zu groups_per_type=%u\n",
              pg.graph.node_count(), pg.graph.edge_count(Layer::Weak),
              pg.graph.edge_count(Layer::Strong), cfg.groups_per_type());
  return 0;
}

int cmd_score(const std::string& graph_path, std::uint64_t node,
              const std::string& out) {
  const LoadResult loaded = load_graph(resolve_out(graph_path));
  const LayeredGraph& g = loaded.graph;
  std::optional<NodeId> focal;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (g.external_id(v) == node) focal = v;
  if (!focal) {
    std::cerr << "node " << node << " not present in graph\n";
    return 1;
  }
  const EgoScorer scorer(g, *focal);
  std::string csv =
      "focal,candidate,degree,embeddedness,adamic_adar,h1,triangles,"
      "squares_inside,squares_outside,pentagons_inside,pentagons_outside\n";
  for (const auto& s : scorer.score_all()) {
    csv += std::to_string(node);
    csv += ',' + std::to_string(g.external_id(s.candidate));
    csv += ',' + std::to_string(s.degree);
    csv += ',' + std::to_string(s.embeddedness);
    csv += ',' + fmt_g17(s.adamic_adar);
    csv += ',' + fmt_g17(s.h1);
    csv += ',' + std::to_string(s.triangles);
    csv += ',' + std::to_string(s.squares_inside);
    csv += ',' + std::to_string(s.squares_outside);
    csv += ',' + std::to_string(s.pentagons_inside);
    csv += ',' + std::to_string(s.pentagons_outside);
    csv += '\n';
  }
  if (out.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else {
    const fs::path path = resolve_out(out);
    write_file(path, csv);
    write_meta(path, "score",
               {{"graph", graph_path}, {"node", node}});
  }
  return 0;
}

struct LearnerFlags {
  double learning_rate = 0.1;
  std::size_t epochs = 500;
  double l2 = 1e-4;
  bool linear = false;

  TrainOptions to_options() const {
    return TrainOptions{learning_rate, epochs, l2, linear};
  }
};

void add_learner_flags(CLI::App* cmd, LearnerFlags& flags) {
  cmd->add_option("--learning-rate", flags.learning_rate, "GD step size");
  cmd->add_option("--epochs", flags.epochs, "full-batch epochs");
  cmd->add_option("--l2", flags.l2, "L2 penalty");
  cmd->add_flag("--linear", flags.linear,
                "least-squares fit instead of logistic");
}

int cmd_evaluate(const std::string& graph_path, const std::string& out,
                 const std::string& task, const SplitSpec& spec,
                 std::uint32_t bucket_width, bool with_oracle,
                 const LearnerFlags& learner, const std::string& model_out) {
  const LoadResult loaded = load_graph(resolve_out(graph_path));
  const HiddenSplit split = make_split(loaded.graph, spec);

  const TrainOptions options = learner.to_options();
  const auto basic_examples =
      build_training_examples(split.train_graph, spec, FeatureSet::Group1);
  LRModel basic = train(basic_examples, feature_schema(FeatureSet::Group1),
                        options);
  basic.seed = spec.seed;
  const auto enhanced_examples =
      build_training_examples(split.train_graph, spec, FeatureSet::Group2);
  LRModel enhanced = train(enhanced_examples,
                           feature_schema(FeatureSet::Group2), options);
  enhanced.seed = spec.seed;
  if (!model_out.empty()) {
    const fs::path model_path = resolve_out(model_out);
    save_model(enhanced, model_path);
  }

  std::vector<std::unique_ptr<Method>> methods;
  methods.push_back(make_random_method(spec.seed));
  methods.push_back(make_score_method(ScoreKind::Degree));
  methods.push_back(make_score_method(ScoreKind::Embeddedness));
  methods.push_back(make_score_method(ScoreKind::AdamicAdar));
  methods.push_back(make_score_method(ScoreKind::H1));
  methods.push_back(make_score_method(ScoreKind::Triangles));
  methods.push_back(make_model_method("basic_lr", std::move(basic),
                                      FeatureSet::Group1));
  methods.push_back(make_score_method(ScoreKind::SquaresInside));
  methods.push_back(make_score_method(ScoreKind::SquaresOutside));
  methods.push_back(make_score_method(ScoreKind::PentagonsInside));
  methods.push_back(make_score_method(ScoreKind::PentagonsOutside));
  methods.push_back(make_model_method("enhanced_lr", std::move(enhanced),
                                      FeatureSet::Group2));
  if (with_oracle) methods.push_back(make_oracle_method(split));

  const EvalReport report =
      task == "p5" ? evaluate_p_at_5(split, methods, spec, bucket_width)
                   : evaluate_p_at_1(split, methods, spec, bucket_width);

  nlohmann::json config = {
      {"graph", graph_path},
      {"task", task},
      {"test_fraction", spec.test_fraction},
      {"d_min", spec.d_min},
      {"d_max", spec.d_max},
      {"seed", spec.seed},
      {"bucket_width", bucket_width},
      {"oracle", with_oracle},
      {"learning_rate", learner.learning_rate},
      {"epochs", learner.epochs},
      {"l2", learner.l2},
      {"linear", learner.linear},
      {"eligible", split.eligible_count},
      {"test_nodes", split.test_nodes.size()},
      {"hidden_edges", split.hidden_edge_count}};
  const fs::path path = resolve_out(out);
  write_file(path, report.to_csv(config_comments(config)));
  write_meta(path, "evaluate", config);
  std::printf("eligible=%zu test_nodes=%zu evaluated=%zu\n",
              split.eligible_count, split.test_nodes.size(),
              report.evaluated_nodes);
  return 0;
}

int cmd_sweep(PlantedFlags flags, std::uint64_t seed, std::string q_spec,
              std::size_t reps, const std::string& out, bool paper_defaults,
              bool smoke, bool resume, int jobs, const LearnerFlags& learner) {
  SweepConfig config;
  config.train_options = learner.to_options();
  config.jobs = jobs;
  if (paper_defaults) {
    flags.n = 4000;
    flags.c = 30;
    flags.p = 0.85;
    flags.r = -1.0;
    config.q_values = q_grid(0.1, 0.1, 2.5);
    config.reps = 20;
  } else if (smoke) {
    flags.n = 1000;
    flags.c = 30;
    flags.p = 0.85;
    flags.r = -1.0;
    config.q_values = {1.0, 1.4, 1.8, 2.2, 2.5};
    config.reps = 5;
  }
  if (!paper_defaults && !smoke) {
    if (flags.n == 0) {
      std::cerr << "sweep: --n is required without --paper-defaults/--smoke\n";
      return 1;
    }
    if (q_spec.empty()) {
      std::cerr << "sweep: --q-values is required without "
                   "--paper-defaults/--smoke\n";
      return 1;
    }
  }
  if (!q_spec.empty()) {
    config.q_values.clear();
    // "lo:step:hi" or comma-separated list
    if (q_spec.find(':') != std::string::npos) {
      double lo, step, hi;
      if (std::sscanf(q_spec.c_str(), "%lf:%lf:%lf", &lo, &step, &hi) != 3) {
        std::cerr << "sweep: cannot parse --q-values '" << q_spec << "'\n";
        return 1;
      }
      config.q_values = q_grid(lo, step, hi);
    } else {
      std::stringstream ss(q_spec);
      std::string field;
      while (std::getline(ss, field, ','))
        config.q_values.push_back(std::stod(field));
    }
  }
  if (reps > 0) config.reps = reps;
  // q flag is ignored here; the grid drives it
  flags.q = config.q_values.empty() ? 0.0 : config.q_values.front();
  config.base = flags.to_config(seed);

  const fs::path table_path = resolve_out(out);
  const fs::path details_path = fs::path(table_path.string() + ".details.csv");

  std::vector<SweepDetail> previous;
  if (resume && fs::exists(details_path)) {
    std::ifstream in(details_path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    previous = parse_sweep_details(buf.str());
  }
  const SweepResult result =
      run_q_sweep(config, previous.empty() ? nullptr : &previous);

  nlohmann::json config_json = planted_json(config.base);
  config_json["reps"] = config.reps;
  config_json["epochs"] = config.train_options.epochs;
  config_json["learning_rate"] = config.train_options.learning_rate;
  config_json["l2"] = config.train_options.l2;
  config_json["linear"] = config.train_options.linear;
  {
    nlohmann::json qs = nlohmann::json::array();
    for (double q : config.q_values) qs.push_back(q);
    config_json["q_values"] = qs;
  }
  const auto comments = config_comments(config_json);
  write_file(table_path, result.table_csv(comments));
  write_file(details_path, result.details_csv(comments));
  write_meta(table_path, "sweep", config_json);
  for (const auto& note : result.notes) std::cerr << "note: " << note << "\n";
  std::printf("sweep rows=%zu details=%zu\n", result.aggregate().size(),
              result.details.size());
  return 0;
}

int cmd_fixture() {
  const FixtureCheck check = run_fixture_check();
  for (const auto& line : check.lines) std::puts(line.c_str());
  std::puts(check.pass ? "fixture check: PASS" : "fixture check: FAIL");
  return check.pass ? 0 : 1;
}

int cmd_hll_squares(const std::string& graph_path,
                    const std::vector<std::uint64_t>& nodes, int precision,
                    std::uint64_t hash_seed, bool exact_check,
                    const std::string& out) {
  const LoadResult loaded = load_graph(resolve_out(graph_path));
  const LayeredGraph& g = loaded.graph;
  std::string csv = exact_check ? "node,candidate,approx_count,exact_count\n"
                                : "node,candidate,approx_count\n";
  for (std::uint64_t node : nodes) {
    std::optional<NodeId> focal;
    for (NodeId v = 0; v < g.node_count(); ++v)
      if (g.external_id(v) == node) focal = v;
    if (!focal) {
      std::cerr << "node " << node << " not present in graph\n";
      return 1;
    }
    const auto approx = approx_square_counts(g, *focal, precision, hash_seed);
    std::vector<std::uint64_t> exact;
    if (exact_check) exact = exact_weak_square_counts(g, *focal);
    for (std::size_t i = 0; i < approx.size(); ++i) {
      csv += std::to_string(node);
      csv += ',' + std::to_string(g.external_id(approx[i].candidate));
      csv += ',' + fmt_g17(approx[i].approx);
      if (exact_check) csv += ',' + std::to_string(exact[i]);
      csv += '\n';
    }
  }
  const nlohmann::json config = {{"graph", graph_path},
                                 {"precision_bits", precision},
                                 {"hash_seed", hash_seed},
                                 {"exact_check", exact_check}};
  if (out.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else {
    const fs::path path = resolve_out(out);
    std::string text;
    for (const auto& line : config_comments(config)) text += "# " + line + "\n";
    text += csv;
    write_file(path, text);
    write_meta(path, "hll-squares", config);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strong-tie detection toolkit"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand(
      "generate", "write a planted-community layered graph + membership sidecar");
  PlantedFlags gen_flags;
  std::uint64_t gen_seed = 0;
  std::string gen_out, gen_membership;
  add_planted_flags(generate, gen_flags, /*require_n=*/true);
  generate->add_option("--seed", gen_seed, "generator seed");
  generate->add_option("--out", gen_out, "graph TSV output path")->required();
  generate->add_option("--membership-out", gen_membership,
                       "membership sidecar path (default <out>.membership.tsv)");

  // score
  auto* score = app.add_subcommand(
      "score", "emit the full score table for one focal node");
  std::string score_graph, score_out;
  std::uint64_t score_node = 0;
  score->add_option("--graph", score_graph, "edge-list input")->required();
  score->add_option("--node", score_node, "focal node (external id)")
      ->required();
  score->add_option("--out", score_out, "CSV output path (default stdout)");

  // evaluate
  auto* evaluate = app.add_subcommand(
      "evaluate", "hide-and-predict evaluation of every method on one graph");
  std::string eval_graph, eval_out, eval_task = "p1", eval_model_out;
  SplitSpec spec;
  std::uint32_t bucket_width = 1;
  bool with_oracle = false;
  LearnerFlags eval_learner;
  evaluate->add_option("--graph", eval_graph, "edge-list input")->required();
  evaluate->add_option("--out", eval_out, "report CSV path")->required();
  evaluate->add_option("--task", eval_task, "p1 | p5")
      ->check(CLI::IsMember({"p1", "p5"}));
  evaluate->add_option("--test-fraction", spec.test_fraction,
                       "fraction of eligible nodes to hide");
  evaluate->add_option("--d-min", spec.d_min, "degree band lower bound");
  evaluate->add_option("--d-max", spec.d_max, "degree band upper bound");
  evaluate->add_option("--seed", spec.seed, "split seed");
  evaluate->add_option("--bucket-width", bucket_width, "degree bucket width");
  evaluate->add_flag("--oracle", with_oracle,
                     "include the ground-truth oracle column");
  evaluate->add_option("--model-out", eval_model_out,
                       "save the enhanced model to this path");
  add_learner_flags(evaluate, eval_learner);

  // sweep
  auto* sweep = app.add_subcommand(
      "sweep", "q-sweep: edge classifiers per feature schema on planted graphs");
  PlantedFlags sweep_flags;
  std::uint64_t sweep_seed = 0;
  std::string sweep_q, sweep_out;
  std::size_t sweep_reps = 0;
  bool paper_defaults = false, smoke = false, resume = false;
  int jobs = 1;
  LearnerFlags sweep_learner;
  add_planted_flags(sweep, sweep_flags, /*require_n=*/false);
  sweep->add_option("--seed", sweep_seed, "sweep seed");
  sweep->add_option("--q-values", sweep_q,
                    "comma list or lo:step:hi (overrides presets)");
  sweep->add_option("--reps", sweep_reps,
                    "train/test pairs per q (overrides presets)");
  sweep->add_option("--out", sweep_out, "table CSV path")->required();
  sweep->add_flag("--paper-defaults", paper_defaults,
                  "n=4000 c=30 p=0.85 r=ln(n)/n q=0.1:0.1:2.5 reps=20");
  sweep->add_flag("--smoke", smoke,
                  "n=1000 five-point grid, 5 reps (fast check)");
  sweep->add_flag("--resume", resume,
                  "reuse completed (q, rep) pairs from <out>.details.csv");
  sweep->add_option("--jobs", jobs, "worker threads");
  add_learner_flags(sweep, sweep_learner);

  // fixture
  app.add_subcommand("fixture",
                     "self-check the toy-example scores against the oracle");

  // hll-squares
  auto* hll = app.add_subcommand(
      "hll-squares", "sketch-based approximate square counts for focal nodes");
  std::string hll_graph, hll_out;
  std::vector<std::uint64_t> hll_nodes;
  int precision = 14;
  std::uint64_t hash_seed = 0;
  bool exact_check = false;
  hll->add_option("--graph", hll_graph, "edge-list input")->required();
  hll->add_option("--node", hll_nodes, "focal node external id (repeatable)")
      ->required();
  hll->add_option("--precision", precision, "sketch precision bits [4,18]");
  hll->add_option("--hash-seed", hash_seed, "sketch hash seed");
  hll->add_flag("--exact-check", exact_check,
                "add the exact weak square count column");
  hll->add_option("--out", hll_out, "CSV output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed())
      return cmd_generate(gen_flags, gen_seed, gen_out, gen_membership);
    if (score->parsed()) return cmd_score(score_graph, score_node, score_out);
    if (evaluate->parsed())
      return cmd_evaluate(eval_graph, eval_out, eval_task, spec, bucket_width,
                          with_oracle, eval_learner, eval_model_out);
    if (sweep->parsed())
      return cmd_sweep(sweep_flags, sweep_seed, sweep_q, sweep_reps, sweep_out,
                       paper_defaults, smoke, resume, jobs, sweep_learner);
    if (app.get_subcommand("fixture")->parsed()) return cmd_fixture();
    if (hll->parsed())
      return cmd_hll_squares(hll_graph, hll_nodes, precision, hash_seed,
                             exact_check, hll_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
