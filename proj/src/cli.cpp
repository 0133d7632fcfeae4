#include "corrgraph/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "corrgraph/config.hpp"
#include "corrgraph/dataset.hpp"
#include "corrgraph/error.hpp"
#include "corrgraph/graph_export.hpp"
#include "corrgraph/graphdist.hpp"
#include "corrgraph/largenet.hpp"
#include "corrgraph/manifest.hpp"
#include "corrgraph/modelcheck.hpp"
#include "corrgraph/parallel.hpp"
#include "corrgraph/rng.hpp"
#include "corrgraph/sampler.hpp"
#include "corrgraph/trace_io.hpp"

namespace corrgraph {

namespace {

namespace fs = std::filesystem;

struct Common {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
};

struct Run {
  Config config;
  fs::path out;
  RunManifest manifest;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  fs::path artifact(const std::string& name, const std::function<void(std::ostream&)>& body) {
    const fs::path path = out / name;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write " + path.string());
    body(f);
    f.flush();
    if (!f) throw IoError("error while writing " + path.string());
    f.close();
    manifest.add_artifact(out, path);
    return path;
  }

  void finish() {
    manifest.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    manifest.config = nlohmann::ordered_json::object();
    for (const auto& [k, v] : config.entries()) manifest.config[k] = v;
    write_manifest_atomic(out, manifest);
  }
};

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void add_common(CLI::App* app, Common& c, bool needs_out = true) {
  app->add_option("--config", c.config_path, "Configuration file (key = value with [sections])");
  auto* out = app->add_option("--out", c.out_dir, "Output directory");
  if (needs_out) out->required();
  app->add_option("--seed", c.seed, "Base random seed");
  app->add_option("--threads", c.threads, "Maximum worker threads (0: all cores)");
}

Run start_run(const std::string& command, const Common& c) {
  Run run;
  if (!c.config_path.empty()) {
    run.config = Config::load(c.config_path);
    run.manifest.add_input(c.config_path);
  }
  run.out = c.out_dir;
  std::error_code ec;
  fs::create_directories(run.out, ec);
  if (ec) throw IoError("cannot create output directory " + run.out.string() + ": " + ec.message());
  run.manifest.command = command;
  run.manifest.version = library_version();
  run.manifest.started_utc = utc_now();
  set_max_threads(c.threads);
  return run;
}

void require_file(const std::string& path, const char* what) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw InputError(std::string(what) + " not found: " + path);
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_graph_files(Run& run, const std::string& stem, const GraphExport& g) {
  run.artifact(stem + ".edges", [&](std::ostream& o) { write_edge_list(o, g); });
  run.artifact(stem + ".dot", [&](std::ostream& o) { write_dot(o, g); });
  run.artifact(stem + ".json", [&](std::ostream& o) { write_json(o, g); });
}

std::vector<double> mean_partial(const ChainTrace& trace) {
  std::vector<double> out(pair_count(trace.p), 0.0);
  const auto post = trace.post_burn_in();
  for (const auto& r : post)
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += r.partial[k];
  for (double& v : out) v /= static_cast<double>(post.size());
  return out;
}

void write_hpd(std::ostream& o, const ChainTrace& trace) {
  o << "parameter,i,j,mean,hpd95_lo,hpd95_hi\n";
  auto row = [&](const std::string& name, std::size_t i, std::size_t j, const TraceSelector& sel) {
    const auto v = post_burn_in_values(trace, sel);
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    const auto [lo, hi] = hpd_of_samples(v, 0.95);
    o << name << ',' << i + 1 << ',' << j + 1 << ',' << fmt17(mean) << ',' << fmt17(lo) << ',' << fmt17(hi) << '\n';
  };
  for (std::size_t i = 0; i < trace.p; ++i)
    for (std::size_t j = i + 1; j < trace.p; ++j) row("corr", i, j, select_corr(trace.p, i, j));
  for (std::size_t i = 0; i < trace.p; ++i)
    for (std::size_t j = i + 1; j < trace.p; ++j) row("partial", i, j, select_partial(trace.p, i, j));
  if (!trace.records.empty() && !trace.records.front().gamma.empty())
    for (std::size_t i = 0; i < trace.p; ++i) row("gamma", i, i, select_gamma(i));
}

// --- learn -----------------------------------------------------------------

struct LearnOpts {
  Common common;
  std::string data;
  std::string delimiter;
  std::optional<std::size_t> iters;
  std::optional<std::size_t> burn_in;
  std::optional<double> threshold;
  std::optional<std::size_t> subsample;
};

int cmd_learn(const LearnOpts& o, std::ostream& out) {
  Run run = start_run("learn", o.common);
  if (!o.delimiter.empty()) run.config.set("data.delimiter", o.delimiter);
  if (o.iters) run.config.set("chain.n_iter", std::to_string(*o.iters));
  if (o.burn_in) run.config.set("chain.burn_in", std::to_string(*o.burn_in));
  if (o.threshold) run.config.set("chain.threshold", fmt17(*o.threshold));
  if (o.subsample) run.config.set("data.subsample", std::to_string(*o.subsample));
  if (o.common.seed) run.config.set("chain.seed", std::to_string(*o.common.seed));

  require_file(o.data, "data file");
  RawDataset raw = load_delimited(o.data, run.config.get_delimiter("data.delimiter", ','));
  run.manifest.add_input(o.data);
  ChainConfig cfg = chain_config_from(run.config);
  run.manifest.seed = cfg.seed;
  if (const auto n = run.config.get_uint("data.subsample", 0); n > 0)
    raw = subsample_rows(raw, n, derive_seed(cfg.seed, {0x5b5a}));
  StandardizedDataset ds = standardize(raw);
  std::size_t removed = 0;
  if (run.config.get_bool("data.prune", true)) {
    auto pruned = prune_dependent_rows(ds);
    removed = pruned.removed.size();
    ds = std::move(pruned.data);
  }

  const ChainTrace trace = run_chain(ds, cfg);
  run.artifact("trace.txt", [&](std::ostream& f) { write_trace(f, trace); });
  const double threshold = run.config.get_double("chain.threshold", 0.05);
  const CredibleGraph g = credible_graph(trace, threshold);
  write_graph_files(run, "graph", to_export(g, trace.column_names, mean_partial(trace)));
  run.artifact("hpd.csv", [&](std::ostream& f) { write_hpd(f, trace); });
  run.finish();

  out << "rows=" << ds.n_rows() << " columns=" << ds.n_cols() << " pruned=" << removed << '\n';
  out << "iterations=" << trace.size() << " burn_in=" << trace.burn_in << " n_post=" << trace.n_post() << '\n';
  out << "acceptance_corr=" << fmt17(trace.acceptance.corr_rate())
      << " acceptance_graph=" << fmt17(trace.acceptance.graph_rate()) << '\n';
  for (std::size_t i = 0; i < g.p; ++i)
    for (std::size_t j = i + 1; j < g.p; ++j)
      if (g.prob(i, j) > 0.0) out << "edge " << i + 1 << ' ' << j + 1 << ' ' << format_prob(g.prob(i, j)) << '\n';
  return kExitOk;
}

// --- graph -----------------------------------------------------------------

struct GraphOpts {
  Common common;
  std::string trace;
  std::optional<double> threshold;
  std::optional<std::size_t> burn_in;
};

int cmd_graph(const GraphOpts& o, std::ostream& out) {
  Run run = start_run("graph", o.common);
  if (o.threshold) run.config.set("chain.threshold", fmt17(*o.threshold));
  require_file(o.trace, "trace file");
  ChainTrace trace = load_trace(o.trace);
  run.manifest.add_input(o.trace);
  if (o.burn_in) {
    if (*o.burn_in >= trace.size()) throw InputError("--burn-in must be smaller than the trace length");
    trace.burn_in = *o.burn_in;
  }
  const CredibleGraph g = credible_graph(trace, run.config.get_double("chain.threshold", 0.05));
  write_graph_files(run, "graph", to_export(g, trace.column_names, mean_partial(trace)));
  run.artifact("hpd.csv", [&](std::ostream& f) { write_hpd(f, trace); });
  run.finish();
  std::size_t edges = 0;
  for (double v : g.edge_prob) edges += v > 0.0;
  out << "n_post=" << g.n_post << " edges=" << edges << '\n';
  return kExitOk;
}

// --- distance --------------------------------------------------------------

struct DistanceOpts {
  Common common;
  std::string trace1;
  std::string trace2;
  bool strict = false;
  std::string reference;
};

int cmd_distance(const DistanceOpts& o, std::ostream& out) {
  Run run = start_run("distance", o.common);
  if (o.strict) run.config.set("distance.strict_lengths", "true");
  require_file(o.trace1, "trace file");
  require_file(o.trace2, "trace file");
  const ChainTrace a = load_trace(o.trace1);
  const ChainTrace b = load_trace(o.trace2);
  run.manifest.add_input(o.trace1);
  run.manifest.add_input(o.trace2);
  DistanceOptions opts;
  opts.strict_lengths = run.config.get_bool("distance.strict_lengths", false);
  const PosteriorSeries sa = series_of(a);
  const PosteriorSeries sb = series_of(b);
  const DistanceReport r = delta(sa, sb, opts);
  const std::string kv = to_key_value(r);
  const std::string js = to_json(r).dump(2);
  run.artifact("distance.txt", [&](std::ostream& f) { f << kv; });
  run.artifact("distance.json", [&](std::ostream& f) { f << js << '\n'; });
  run.artifact("bands.csv", [&](std::ostream& f) { write_band_data(f, sa, sb, r.scale_s); });
  run.finish();
  out << kv << js << '\n';
  if (!o.reference.empty()) {
    if (o.reference != "wine") throw InputError("unknown reference set '" + o.reference + "' (known: wine)");
    namespace w = wine_reference;
    auto line = [&](const char* key, double computed, double published) {
      out << "reference." << key << " computed=" << fmt17(computed) << " published=" << fmt17(published)
          << " difference=" << fmt17(computed - published) << '\n';
    };
    line("scale_s", r.scale_s, w::scale_s);
    line("hellinger", r.hellinger, w::hellinger);
    line("bhattacharyya", r.bhattacharyya, w::bhattacharyya);
    line("d_max_1", r.d_max_1, w::d_max_white);
    line("d_max_2", r.d_max_2, w::d_max_red);
    line("delta", r.delta, w::delta);
    line("affinity", r.affinity, w::affinity);
    line("log_odds_mean", r.log_odds_mean, w::log_odds_mean);
  }
  return kExitOk;
}

// --- largenet --------------------------------------------------------------

struct LargenetOpts {
  Common common;
  std::string data;
  std::string classes;
  std::string delimiter;
  std::optional<double> threshold;
};

int cmd_largenet(const LargenetOpts& o, std::ostream& out) {
  Run run = start_run("largenet", o.common);
  if (!o.delimiter.empty()) run.config.set("largenet.delimiter", o.delimiter);
  if (o.threshold) run.config.set("largenet.threshold", fmt17(*o.threshold));
  const char delim = run.config.get_delimiter("largenet.delimiter", ',');
  require_file(o.data, "score file");
  RelevanceMatrix rel = load_relevance_triples(o.data, delim);
  run.manifest.add_input(o.data);
  if (!o.classes.empty()) {
    require_file(o.classes, "class file");
    std::ifstream in(o.classes);
    attach_classes(rel, in, delim, o.classes);
    run.manifest.add_input(o.classes);
  }
  const LikelihoodForm form = parse_likelihood_form(run.config.get_string("largenet.likelihood_form", "single_term"));
  const LargeNetResult res = run_largenet(rel, run.config.get_double("largenet.threshold", 0.9), form);
  write_graph_files(run, "largenet", to_export(res.graph));
  if (!rel.item_classes.empty()) {
    const auto rows = class_variance_ratio(res.posterior, rel.item_classes);
    run.artifact("classes.csv", [&](std::ostream& f) { write_class_table(f, rows); });
  }
  run.finish();
  const double mean_degree =
      res.graph.nodes.empty() ? 0.0 : 2.0 * double(res.graph.edges.size()) / double(res.graph.nodes.size());
  out << "items=" << rel.n_items() << " features=" << rel.n_features() << " nodes=" << res.graph.nodes.size()
      << " edges=" << res.graph.edges.size() << " mean_degree=" << fmt17(mean_degree) << '\n';
  return kExitOk;
}

// --- simulate --------------------------------------------------------------

struct SimulateOpts {
  Common common;
  std::optional<std::size_t> n;
  std::string sigma;
};

int cmd_simulate(const SimulateOpts& o, std::ostream& out) {
  Run run = start_run("simulate", o.common);
  if (!o.sigma.empty()) run.config.set("simulate.sigma", o.sigma);
  if (o.n) run.config.set("simulate.n", std::to_string(*o.n));
  if (o.common.seed) run.config.set("simulate.seed", std::to_string(*o.common.seed));
  const auto sigma_text = run.config.get("simulate.sigma");
  if (!sigma_text) throw InputError("simulate needs a correlation matrix (simulate.sigma or --sigma)");
  const linalg::SymMatrix sigma = parse_matrix(*sigma_text);
  const std::size_t n = run.config.get_uint("simulate.n", 300);
  const std::uint64_t seed = run.config.get_uint("simulate.seed", 1);
  run.manifest.seed = seed;
  const RawDataset ds = simulate(sigma, n, seed);
  run.artifact("data.csv", [&](std::ostream& f) { write_delimited(f, ds.values, ds.column_names); });
  const double noise = run.config.get_double("simulate.noise_variance", 0.0);
  if (noise > 0.0) {
    const std::size_t col = run.config.get_uint("simulate.noise_column", 1);
    if (col < 1 || col > ds.n_cols()) throw InputError("simulate.noise_column out of range (1-based)");
    const RawDataset noisy = add_measurement_noise(ds, col - 1, noise, derive_seed(seed, {0x401}));
    run.artifact("data_noisy.csv", [&](std::ostream& f) { write_delimited(f, noisy.values, noisy.column_names); });
  }
  run.finish();
  const linalg::SymMatrix emp = empirical_correlation(ds.values);
  double worst = 0.0;
  for (std::size_t i = 0; i < sigma.dim(); ++i)
    for (std::size_t j = i + 1; j < sigma.dim(); ++j) worst = std::max(worst, std::abs(emp(i, j) - sigma(i, j)));
  out << "rows=" << n << " columns=" << sigma.dim() << " max_abs_corr_error=" << fmt17(worst) << '\n';
  return kExitOk;
}

// --- predict ---------------------------------------------------------------

struct PredictOpts {
  Common common;
  std::string data;
  std::string test;
  std::string trace;
  std::string unknown;
  std::string mode;
  std::string delimiter;
  std::optional<std::size_t> iters;
  std::optional<std::size_t> burn_in;
};

int cmd_predict(const PredictOpts& o, std::ostream& out) {
  Run run = start_run("predict", o.common);
  if (!o.unknown.empty()) run.config.set("predict.unknown", o.unknown);
  if (!o.mode.empty()) run.config.set("predict.mode", o.mode);
  if (!o.delimiter.empty()) run.config.set("data.delimiter", o.delimiter);
  if (o.iters) run.config.set("predict.n_iter", std::to_string(*o.iters));
  if (o.burn_in) run.config.set("predict.burn_in", std::to_string(*o.burn_in));
  if (o.common.seed) run.config.set("predict.seed", std::to_string(*o.common.seed));
  const char delim = run.config.get_delimiter("data.delimiter", ',');

  require_file(o.data, "training data file");
  require_file(o.test, "test data file");
  const RawDataset train_raw = load_delimited(o.data, delim);
  const RawDataset test_raw = load_delimited(o.test, delim);
  run.manifest.add_input(o.data);
  run.manifest.add_input(o.test);
  if (train_raw.n_cols() != test_raw.n_cols())
    throw InputError("training data has " + std::to_string(train_raw.n_cols()) + " columns but test data has " +
                     std::to_string(test_raw.n_cols()));
  const StandardizedDataset train = standardize(train_raw);
  linalg::Matrix test = test_raw.values;
  for (std::size_t r = 0; r < test.rows(); ++r)
    for (std::size_t j = 0; j < test.cols(); ++j)
      test(r, j) = (test(r, j) - train.column_means[j]) / train.column_sds[j];

  PredictionTask task{train.values, test, {}};
  for (double v : run.config.get_doubles("predict.unknown")) {
    if (v < 1 || v != std::floor(v)) throw InputError("predict.unknown holds 1-based column numbers");
    task.unknown.push_back(static_cast<std::size_t>(v) - 1);
  }
  if (task.unknown.empty()) throw InputError("predict needs at least one unknown column (--unknown)");
  task.validate();
  const PredictConfig cfg = predict_config_from(run.config);
  run.manifest.seed = cfg.seed;
  const std::string mode = run.config.get_string("predict.mode", "conditional");

  CellSamples cells;
  if (mode == "conditional") {
    std::optional<CorrelationState> sigma;
    if (!o.trace.empty()) {
      require_file(o.trace, "trace file");
      sigma = modal_correlation(load_trace(o.trace), cfg.histogram_bins);
      run.manifest.add_input(o.trace);
    } else if (auto s = run.config.get("predict.sigma")) {
      sigma = CorrelationState::from_matrix(parse_matrix(*s));
    } else {
      sigma = ridge_to_correlation(empirical_correlation(train.values));
    }
    if (sigma->p != task.p()) throw InputError("correlation matrix size does not match the data");
    cells = predict_conditional(task, *sigma, cfg);
  } else if (mode == "joint") {
    const JointPrediction jp = joint_predict(task, cfg);
    cells = jp.cells;
    run.artifact("corr_samples.csv", [&](std::ostream& f) {
      for (std::size_t i = 0; i < task.p(); ++i)
        for (std::size_t j = i + 1; j < task.p(); ++j) f << (i || j > 1 ? "," : "") << 'S' << i + 1 << '_' << j + 1;
      f << '\n';
      for (const auto& row : jp.corr) {
        for (std::size_t k = 0; k < row.size(); ++k) f << (k ? "," : "") << fmt17(row[k]);
        f << '\n';
      }
    });
  } else {
    throw InputError("predict.mode must be conditional or joint, got '" + mode + "'");
  }
  run.artifact("samples.csv", [&](std::ostream& f) { write_cell_samples(f, cells); });
  run.artifact("comparison.csv", [&](std::ostream& f) { write_comparison(f, cells, &test); });
  run.finish();
  out << "test_rows=" << task.q() << " unknown_columns=" << task.unknown.size()
      << " acceptance=" << fmt17(cells.acceptance_rate) << '\n';
  for (std::size_t c = 0; c < task.unknown.size(); ++c) {
    std::vector<double> held;
    for (std::size_t r = 0; r < task.q(); ++r) held.push_back(test(r, task.unknown[c]));
    out << "column " << task.unknown[c] + 1 << " ks=" << fmt17(ks_statistic(cells.pooled(c), held)) << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bayesian correlation-graph learning and graph distances"};
  app.set_version_flag("--version", library_version());
  app.require_subcommand(1);

  LearnOpts learn;
  auto* c_learn = app.add_subcommand("learn", "Learn the correlation matrix and credible graph of a dataset");
  add_common(c_learn, learn.common);
  c_learn->add_option("--data", learn.data, "Delimited data file with a header row")->required();
  c_learn->add_option("--delimiter", learn.delimiter, "Cell delimiter (default ',')");
  c_learn->add_option("--iters", learn.iters, "Chain length, including the initial state");
  c_learn->add_option("--burn-in", learn.burn_in, "Burn-in records");
  c_learn->add_option("--threshold", learn.threshold, "Credible-graph edge threshold (default 0.05)");
  c_learn->add_option("--subsample", learn.subsample, "Use this many rows, drawn without replacement");

  GraphOpts graph;
  auto* c_graph = app.add_subcommand("graph", "Rebuild the credible graph from a trace file");
  add_common(c_graph, graph.common);
  c_graph->add_option("--trace", graph.trace, "Trace file written by learn")->required();
  c_graph->add_option("--threshold", graph.threshold, "Edge threshold (default 0.05)");
  c_graph->add_option("--burn-in", graph.burn_in, "Override the trace's burn-in");

  DistanceOpts dist;
  auto* c_dist = app.add_subcommand("distance", "Distance and affinity between two learnt graphical models");
  add_common(c_dist, dist.common);
  c_dist->add_option("--trace1", dist.trace1, "First trace file")->required();
  c_dist->add_option("--trace2", dist.trace2, "Second trace file")->required();
  c_dist->add_flag("--strict-lengths", dist.strict, "Fail on unequal post-burn-in lengths");
  c_dist->add_option("--reference", dist.reference, "Print differences against a published reference set (wine)");

  LargenetOpts large;
  auto* c_large = app.add_subcommand("largenet", "Rank-correlation network for many items");
  add_common(c_large, large.common);
  c_large->add_option("--data", large.data, "item,feature,score triples")->required();
  c_large->add_option("--classes", large.classes, "item,class lines for the class-separation table");
  c_large->add_option("--delimiter", large.delimiter, "Field delimiter (default ',')");
  c_large->add_option("--threshold", large.threshold, "Edge posterior threshold (default 0.9)");

  SimulateOpts sim;
  auto* c_sim = app.add_subcommand("simulate", "Simulate data with a given correlation matrix");
  add_common(c_sim, sim.common);
  c_sim->add_option("--n", sim.n, "Rows to draw (default 300)");
  c_sim->add_option("--sigma", sim.sigma, "Correlation matrix, rows separated by ';'");

  PredictOpts pred;
  auto* c_pred = app.add_subcommand("predict", "Posterior-predictive check of held-out columns");
  add_common(c_pred, pred.common);
  c_pred->add_option("--data", pred.data, "Training data")->required();
  c_pred->add_option("--test", pred.test, "Test data with the same columns")->required();
  c_pred->add_option("--trace", pred.trace, "Trace whose modal correlation is used");
  c_pred->add_option("--unknown", pred.unknown, "1-based columns to predict, comma separated");
  c_pred->add_option("--mode", pred.mode, "conditional (default) or joint");
  c_pred->add_option("--delimiter", pred.delimiter, "Cell delimiter (default ',')");
  c_pred->add_option("--iters", pred.iters, "Iterations");
  c_pred->add_option("--burn-in", pred.burn_in, "Burn-in iterations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << library_version() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }

  try {
    if (c_learn->parsed()) return cmd_learn(learn, out);
    if (c_graph->parsed()) return cmd_graph(graph, out);
    if (c_dist->parsed()) return cmd_distance(dist, out);
    if (c_large->parsed()) return cmd_largenet(large, out);
    if (c_sim->parsed()) return cmd_simulate(sim, out);
    if (c_pred->parsed()) return cmd_predict(pred, out);
  } catch (const ChainDiverged& e) {
    err << "error: chain diverged: " << e.what() << '\n';
    return kExitDiverged;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const NotPositiveDefinite& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const DegenerateUncertainty& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace corrgraph
