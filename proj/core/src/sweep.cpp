#include "strongties/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "strongties/parallel.hpp"
#include "strongties/rng.hpp"

namespace strongties {

namespace {

constexpr std::uint64_t kStreamTrainGraph = 0x73777472;  // sweep/train
constexpr std::uint64_t kStreamTestGraph = 0x73777465;   // sweep/test

std::string fmt_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<Example> edge_examples(const PlantedGraph& pg, FeatureSet set) {
  std::vector<Example> out;
  const auto counts = edge_motif_counts(pg.graph);
  out.reserve(counts.size());
  for (const auto& e : counts) {
    Example ex;
    ex.x = featurize_counts(static_cast<double>(e.triangles),
                            static_cast<double>(e.squares), set);
    ex.label = pg.graph.has_edge(e.u, e.v, Layer::Strong) ? 1 : 0;
    out.push_back(std::move(ex));
  }
  return out;
}

}  // namespace

Prf strong_class_prf(const LRModel& model,
                     const std::vector<Example>& test_examples) {
  std::size_t tp = 0, fp = 0, fn = 0;
  for (const Example& ex : test_examples) {
    const bool predicted = model.classify(ex.x);
    if (predicted && ex.label == 1) ++tp;
    if (predicted && ex.label == 0) ++fp;
    if (!predicted && ex.label == 1) ++fn;
  }
  Prf prf;
  if (tp + fp > 0)
    prf.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  if (tp + fn > 0)
    prf.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  if (prf.precision + prf.recall > 0.0)
    prf.f1 = 2.0 * prf.precision * prf.recall / (prf.precision + prf.recall);
  return prf;
}

std::vector<double> q_grid(double lo, double step, double hi) {
  std::vector<double> out;
  // Integer stepping avoids accumulating float error across the grid.
  const auto steps = static_cast<std::size_t>(
      std::floor((hi - lo) / step + 0.5));
  for (std::size_t i = 0; i <= steps; ++i) out.push_back(lo + step * static_cast<double>(i));
  return out;
}

SweepResult run_q_sweep(const SweepConfig& config,
                        const std::vector<SweepDetail>* resume) {
  if (config.reps == 0)
    throw std::invalid_argument("sweep: reps must be >= 1");
  if (config.q_values.empty())
    throw std::invalid_argument("sweep: empty q grid");
  if (config.schemas.empty())
    throw std::invalid_argument("sweep: no feature schemas");

  SweepResult result;
  result.config = config;
  const std::size_t schemas = config.schemas.size();
  const std::size_t jobs_total = config.q_values.size() * config.reps;
  result.details.resize(jobs_total * schemas);

  std::vector<std::uint8_t> done(jobs_total, 0);
  if (resume) {
    std::vector<std::size_t> found(jobs_total, 0);
    for (const SweepDetail& d : *resume) {
      if (d.q_index >= config.q_values.size() || d.rep >= config.reps) continue;
      const std::size_t job = d.q_index * config.reps + d.rep;
      for (std::size_t si = 0; si < schemas; ++si) {
        if (config.schemas[si] != d.schema) continue;
        result.details[job * schemas + si] = d;
        ++found[job];
      }
    }
    // A job is resumed only when every schema row is present.
    for (std::size_t job = 0; job < jobs_total; ++job)
      if (found[job] >= schemas) done[job] = 1;
  }

  // Invalid q points (within probability above 1) are skipped up front.
  std::vector<std::uint8_t> q_valid(config.q_values.size(), 1);
  for (std::size_t qi = 0; qi < config.q_values.size(); ++qi) {
    PlantedConfig cfg = config.base;
    cfg.q = config.q_values[qi];
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      q_valid[qi] = 0;
      result.notes.push_back("skipped q=" + fmt_g17(cfg.q) + ": " + e.what());
    }
  }

  run_indexed(jobs_total, config.jobs, [&](std::size_t job) {
    if (done[job]) return;
    const std::size_t qi = job / config.reps;
    const std::size_t rep = job % config.reps;
    const double q = config.q_values[qi];

    auto mark_degenerate = [&] {
      for (std::size_t si = 0; si < schemas; ++si) {
        SweepDetail& d = result.details[job * schemas + si];
        d = {qi, rep, config.schemas[si], /*degenerate=*/true, 0.0, 0.0, 0.0};
      }
    };
    if (!q_valid[qi]) {
      mark_degenerate();
      return;
    }

    PlantedConfig cfg = config.base;
    cfg.q = q;
    PlantedConfig train_cfg = cfg;
    train_cfg.seed = keyed_u64(config.base.seed, kStreamTrainGraph, qi, rep);
    PlantedConfig test_cfg = cfg;
    test_cfg.seed = keyed_u64(config.base.seed, kStreamTestGraph, qi, rep);
    const PlantedGraph train_pg = generate_planted(train_cfg);
    const PlantedGraph test_pg = generate_planted(test_cfg);

    for (std::size_t si = 0; si < schemas; ++si) {
      SweepDetail& d = result.details[job * schemas + si];
      d.q_index = qi;
      d.rep = rep;
      d.schema = config.schemas[si];
      const auto train_x = edge_examples(train_pg, config.schemas[si]);
      const auto test_x = edge_examples(test_pg, config.schemas[si]);
      try {
        const LRModel model = train(train_x, feature_schema(config.schemas[si]),
                                    config.train_options);
        const Prf prf = strong_class_prf(model, test_x);
        d.degenerate = false;
        d.precision = prf.precision;
        d.recall = prf.recall;
        d.f1 = prf.f1;
      } catch (const TrainingError&) {
        d.degenerate = true;
      }
    }
  });
  return result;
}

std::vector<SweepCell> SweepResult::aggregate() const {
  std::vector<SweepCell> cells;
  const std::size_t schemas = config.schemas.size();
  for (std::size_t qi = 0; qi < config.q_values.size(); ++qi) {
    for (std::size_t si = 0; si < schemas; ++si) {
      std::vector<double> p, r, f;
      for (std::size_t rep = 0; rep < config.reps; ++rep) {
        const SweepDetail& d =
            details[(qi * config.reps + rep) * schemas + si];
        if (d.degenerate) continue;
        p.push_back(d.precision);
        r.push_back(d.recall);
        f.push_back(d.f1);
      }
      auto push = [&](const char* metric, const std::vector<double>& xs) {
        SweepCell cell;
        cell.q = config.q_values[qi];
        cell.schema = config.schemas[si];
        cell.metric = metric;
        cell.reps = xs.size();
        if (!xs.empty()) {
          double mean = 0.0;
          for (double x : xs) mean += x;
          mean /= static_cast<double>(xs.size());
          double var = 0.0;
          for (double x : xs) var += (x - mean) * (x - mean);
          cell.mean = mean;
          cell.stderr_mean =
              xs.size() > 1 ? std::sqrt(var / static_cast<double>(xs.size() - 1) /
                                        static_cast<double>(xs.size()))
                            : 0.0;
        }
        cells.push_back(cell);
      };
      push("precision", p);
      push("recall", r);
      push("f1", f);
    }
  }
  return cells;
}

const SweepCell* SweepResult::cell(double q, FeatureSet schema,
                                   std::string_view metric,
                                   const std::vector<SweepCell>& cells) const {
  for (const auto& c : cells)
    if (c.q == q && c.schema == schema && c.metric == metric) return &c;
  return nullptr;
}

std::string SweepResult::table_csv(
    const std::vector<std::string>& header_comments) const {
  std::string out;
  for (const auto& line : header_comments) out += "# " + line + "\n";
  for (const auto& note : notes) out += "# note: " + note + "\n";
  out += "q,schema,metric,mean,stderr,reps\n";
  for (const auto& c : aggregate()) {
    out += fmt_g17(c.q);
    out += ',';
    out += feature_set_name(c.schema);
    out += ',' + c.metric;
    if (c.reps == 0) {
      out += ",,";  // degenerate cell: no values
    } else {
      out += ',' + fmt_g17(c.mean);
      out += ',' + fmt_g17(c.stderr_mean);
    }
    out += ',' + std::to_string(c.reps);
    out += '\n';
  }
  return out;
}

std::string SweepResult::details_csv(
    const std::vector<std::string>& header_comments) const {
  std::string out;
  for (const auto& line : header_comments) out += "# " + line + "\n";
  out += "q_index,q,rep,schema,degenerate,precision,recall,f1\n";
  for (const auto& d : details) {
    out += std::to_string(d.q_index);
    out += ',' + fmt_g17(config.q_values[d.q_index]);
    out += ',' + std::to_string(d.rep);
    out += ',';
    out += feature_set_name(d.schema);
    out += d.degenerate ? ",1" : ",0";
    out += ',' + fmt_g17(d.precision);
    out += ',' + fmt_g17(d.recall);
    out += ',' + fmt_g17(d.f1);
    out += '\n';
  }
  return out;
}

std::vector<SweepDetail> parse_sweep_details(const std::string& text) {
  std::vector<SweepDetail> out;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {  // column header
      header_seen = true;
      continue;
    }
    std::istringstream row(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() != 8)
      throw std::runtime_error("malformed sweep details row: " + line);
    SweepDetail d;
    d.q_index = std::stoul(fields[0]);
    d.rep = std::stoul(fields[2]);
    d.schema = feature_set_from_name(fields[3]);
    d.degenerate = fields[4] == "1";
    d.precision = std::stod(fields[5]);
    d.recall = std::stod(fields[6]);
    d.f1 = std::stod(fields[7]);
    out.push_back(d);
  }
  return out;
}

}  // namespace strongties
