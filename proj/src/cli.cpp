#include "sgf/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include "sgf/error.hpp"
#include "sgf/eval.hpp"
#include "sgf/forge.hpp"
#include "sgf/generators.hpp"
#include "sgf/rng.hpp"

namespace sgf::cli {

namespace {

struct Options {
  std::vector<std::string> inputs;
  std::vector<std::string> attrs;
  std::string generated;
  std::string anonymized;
  std::string output;
  std::string output_dir;
  double alpha = 0.9;
  std::string rule = "truncate";
  double logistic_k = 6.0;
  std::string transformation = "modularity";
  std::uint64_t seed = 0;
  std::size_t runs = 10;
  std::size_t graphs = 10;
  std::string strategies = "sgf:0.9,sgf:0.5,sgf:0.3,dcsbm,trajanovski";
  std::string preset;
  double seed_fraction = 0.05;
  std::string alphas = "0.1:1.0:0.1";
  // Preset knobs; unset means the preset's own default.
  std::optional<int> n, communities;
  std::optional<double> p_in, p_out, out_degree, mean_degree, community_size, mixing;
  std::string config;
};

NormalizationRule rule_of(const Options& o) { return NormalizationRule::parse(o.rule, o.logistic_k); }

std::uint64_t tag(std::string_view s) {
  std::uint64_t h = 0;
  for (unsigned char c : s) h = mix64(h ^ c);
  return h;
}

Graph load_input(const std::string& path, const std::string& attrs) {
  Graph g = load_edge_list_file(path);
  return attrs.empty() ? g : load_attributes_file(attrs, g);
}

// Writes `text` to dir/name, or to `out` when dir is empty.
void emit(const Options& o, const std::string& name, const std::string& text, std::ostream& out) {
  if (o.output_dir.empty()) {
    out << text;
    return;
  }
  std::filesystem::create_directories(o.output_dir);
  const auto path = std::filesystem::path(o.output_dir) / name;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path.string() + "'");
  f << text;
}

PlantedPartitionConfig planted_config(const Options& o, std::uint64_t seed) {
  PlantedPartitionConfig c;
  c.n = o.n.value_or(128);
  c.m = o.communities.value_or(4);
  c.p_in = o.p_in.value_or(0.5);
  c.p_out = o.p_out.value_or(0.02);
  c.rng_seed = seed;
  return c;
}

PlantedPartitionConfig girvan_config(const Options& o, std::uint64_t seed) {
  return girvan_preset(seed, o.out_degree.value_or(4.0), o.mean_degree.value_or(16.0));
}

LancichinettiConfig lancichinetti_config(const Options& o, std::uint64_t seed) {
  LancichinettiConfig c;
  c.n = o.n.value_or(c.n);
  c.mean_degree = o.mean_degree.value_or(c.mean_degree);
  c.mean_community_size = o.community_size.value_or(c.mean_community_size);
  c.mixing = o.mixing.value_or(c.mixing);
  c.rng_seed = seed;
  return c;
}

Graph preset_graph(const Options& o, std::size_t index) {
  const std::uint64_t seed = derive_seed(o.seed, {tag(o.preset), index});
  if (o.preset == "girvan") return planted_partition(girvan_config(o, seed)).graph;
  if (o.preset == "planted") return planted_partition(planted_config(o, seed)).graph;
  if (o.preset == "lancichinetti") return lancichinetti(lancichinetti_config(o, seed)).graph;
  throw ValidationError("unknown preset '" + o.preset + "' (expected girvan, lancichinetti or planted)");
}

// ---- subcommands ----------------------------------------------------------

int run_generate(const Options& o, std::ostream& out) {
  if (o.inputs.size() != 1) throw ValidationError("generate needs exactly one --input");
  const Graph g = load_input(o.inputs[0], o.attrs.empty() ? "" : o.attrs[0]);
  const SgfConfig cfg{Alpha(o.alpha), rule_of(o), o.seed, parse_transformation(o.transformation)};
  const std::string text = write_edge_list(sgf(g, cfg)) + '\n';
  if (!o.output.empty()) {
    std::ofstream f(o.output, std::ios::binary);
    if (!f) throw Error("cannot write '" + o.output + "'");
    f << text;
  } else {
    emit(o, "generated.el", text, out);
  }
  return 0;
}

int run_eval(const Options& o, std::ostream& out) {
  if (o.inputs.size() != 1) throw ValidationError("eval needs exactly one --input");
  if (o.generated.empty()) throw ValidationError("eval needs --generated");
  const Graph in = load_input(o.inputs[0], o.attrs.empty() ? "" : o.attrs[0]);
  const Graph gen = load_edge_list_file(o.generated).with_attributes(in.attributes());
  const auto r = compare(in, gen, o.seed);
  std::string csv = "metric,value\n";
  auto row = [&](const std::string& name, const Metric& v) { csv += name + ',' + format_metric(v) + '\n'; };
  row("modularity_ratio", r.modularity_ratio);
  row("partition_number_ratio", r.partition_number_ratio);
  row("clustering_ratio", r.clustering_ratio);
  row("degree_correlation", r.degree_correlation);
  for (const auto& [name, v] : r.attribute_modularity_ratios) row("attr:" + name, v);
  row("q_in", r.q_in);
  row("q_out", r.q_out);
  row("m_in", r.m_in);
  row("m_out", r.m_out);
  row("clustering_in", r.clustering_in);
  row("clustering_out", r.clustering_out);
  emit(o, "metrics.csv", csv, out);
  return 0;
}

int run_sweep(const Options& o, std::ostream& out) {
  Graph g;
  if (!o.inputs.empty()) {
    g = load_input(o.inputs[0], o.attrs.empty() ? "" : o.attrs[0]);
  } else if (!o.preset.empty()) {
    g = preset_graph(o, 0);
  } else {
    throw ValidationError("sweep needs --input or --preset");
  }
  const auto rows = alpha_sweep(g, parse_alpha_grid(o.alphas), rule_of(o),
                                parse_transformation(o.transformation), o.runs, o.seed_fraction, o.seed);
  emit(o, "sweep.csv", sweep_csv(rows), out);
  return 0;
}

int run_attack(const Options& o, std::ostream& out) {
  if (o.inputs.size() != 1) throw ValidationError("attack needs exactly one --input");
  if (o.anonymized.empty()) throw ValidationError("attack needs --anonymized");
  const Graph a = load_edge_list_file(o.inputs[0]);
  const Graph b = load_edge_list_file(o.anonymized);
  const auto r = dv_attack(a, b, {o.seed_fraction, o.seed});
  const std::string csv = "identification_rate,baseline_rate,seeds,correct\n" +
                          format_number(r.identification_rate) + ',' + format_number(r.baseline_rate) +
                          ',' + std::to_string(r.seeds) + ',' + std::to_string(r.correct) + '\n';
  emit(o, "attack.csv", csv, out);
  return 0;
}

int run_normalization_study(const Options& o, std::ostream& out) {
  const NodeId n = o.n.value_or(100);
  const double mean_degree = o.mean_degree.value_or(4.5);
  std::vector<StudyInput> inputs;
  for (std::size_t i = 0; i < o.graphs; ++i) {
    const double p = mean_degree / static_cast<double>(n - 1);
    inputs.push_back({"er" + std::to_string(i), "er", erdos_renyi(n, p, derive_seed(o.seed, {tag("er"), i}))});
  }
  for (std::size_t i = 0; i < o.graphs; ++i)
    inputs.push_back({"ba" + std::to_string(i), "ba",
                      barabasi_albert(n, mean_degree, derive_seed(o.seed, {tag("ba"), i}))});
  const std::vector<NormalizationRule> rules{NormalizationRule::logistic(o.logistic_k),
                                             NormalizationRule::truncate(), NormalizationRule::scale()};
  emit(o, "normalization.csv", normalization_csv(normalization_study(inputs, parse_alpha_grid(o.alphas), rules)),
       out);
  return 0;
}

int run_bench(const Options& o, std::ostream& out) {
  if (o.preset == "normalization") return run_normalization_study(o, out);
  std::vector<Strategy> strategies;
  const auto rule = rule_of(o);
  const auto t = parse_transformation(o.transformation);
  std::string_view list = o.strategies;
  while (!list.empty()) {
    const auto comma = list.find(',');
    auto s = Strategy::parse(list.substr(0, comma));
    s.rule = rule;
    s.transformation = t;
    strategies.push_back(s);
    list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
  }
  if (strategies.empty()) throw ValidationError("bench needs at least one strategy");

  std::vector<Dataset> datasets;
  if (!o.preset.empty()) {
    Dataset d{o.preset, {}};
    for (std::size_t i = 0; i < o.graphs; ++i) d.graphs.push_back(preset_graph(o, i));
    datasets.push_back(std::move(d));
  }
  if (!o.attrs.empty() && o.attrs.size() != o.inputs.size())
    throw ValidationError("bench needs one --attrs per --input");
  for (std::size_t i = 0; i < o.inputs.size(); ++i)
    datasets.push_back({std::filesystem::path(o.inputs[i]).stem().string(),
                        {load_input(o.inputs[i], o.attrs.empty() ? "" : o.attrs[i])}});
  if (datasets.empty()) throw ValidationError("bench needs --preset or --input");

  emit(o, "bench.csv", experiment_csv(run_experiment(strategies, datasets, o.runs, o.seed)), out);
  return 0;
}

// ---- argument plumbing ----------------------------------------------------

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "JSON file of option values; command-line flags override it");
  sub->add_option("--output-dir", o.output_dir, "Directory for result files (default: stdout)");
  sub->add_option("--seed", o.seed, "Master seed; every random choice derives from it");
}

void add_sgf(CLI::App* sub, Options& o) {
  sub->add_option("--rule", o.rule, "Normalization rule")->check(CLI::IsMember({"logistic", "truncate", "scale"}));
  sub->add_option("--logistic-k", o.logistic_k, "Logistic steepness in [2, 10]");
  sub->add_option("--transformation", o.transformation, "Matrix the filter acts on")
      ->check(CLI::IsMember({"modularity", "adjacency"}));
}

void add_preset(CLI::App* sub, Options& o) {
  sub->add_option("--preset", o.preset, "Synthetic dataset: girvan, lancichinetti or planted; bench also takes normalization");
  sub->add_option("--n", o.n, "Preset node count");
  sub->add_option("--communities", o.communities, "Planted preset block count");
  sub->add_option("--p-in", o.p_in, "Planted preset intra-block edge probability");
  sub->add_option("--p-out", o.p_out, "Planted preset inter-block edge probability");
  sub->add_option("--out-degree", o.out_degree, "Girvan preset expected inter-block degree");
  sub->add_option("--mean-degree", o.mean_degree, "Preset mean degree");
  sub->add_option("--community-size", o.community_size, "Lancichinetti mean community size");
  sub->add_option("--mixing", o.mixing, "Lancichinetti mixing fraction");
}

// Option strings from a flat JSON object, for insertion ahead of the
// command-line flags (which therefore take precedence).
std::vector<std::string> config_args(const std::string& path, const CLI::App& sub) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("config '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw ValidationError("config '" + path + "' must be a JSON object");
  std::vector<std::string> args;
  for (const auto& [key, value] : j.items()) {
    std::string flag = "--" + key;
    for (auto& c : flag)
      if (c == '_') c = '-';
    if (flag == "--config" || sub.get_option_no_throw(flag) == nullptr)
      throw ValidationError("config '" + path + "': unknown key '" + key + "' for " + sub.get_name());
    auto scalar = [&](const nlohmann::json& v) {
      if (v.is_string()) return v.get<std::string>();
      if (v.is_number()) return v.dump();
      throw ValidationError("config '" + path + "': key '" + key + "' needs a string or number");
    };
    if (value.is_array()) {
      if (flag == "--strategies") {
        std::string joined;
        for (const auto& v : value) joined += (joined.empty() ? "" : ",") + scalar(v);
        args.insert(args.end(), {flag, joined});
      } else {
        for (const auto& v : value) args.insert(args.end(), {flag, scalar(v)});
      }
    } else {
      args.insert(args.end(), {flag, scalar(value)});
    }
  }
  return args;
}

void apply_thread_cap() {
  const char* env = std::getenv("SGF_THREADS");
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  const long t = std::strtol(env, &end, 10);
  if (*end != '\0' || t < 1) throw ValidationError("SGF_THREADS must be a positive integer");
  omp_set_num_threads(static_cast<int>(t));
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Spectral graph forge: modularity-preserving synthetic graphs"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "Generate a graph from an input edge list");
  add_common(gen, o);
  add_sgf(gen, o);
  gen->add_option("--input", o.inputs, "Input edge list")->required()->expected(1);
  gen->add_option("--attrs", o.attrs, "Attribute CSV for the input")->expected(1);
  gen->add_option("--alpha", o.alpha, "Fraction of eigen-terms kept, in [0, 1]");
  gen->add_option("--output", o.output, "Output edge list path");

  auto* ev = app.add_subcommand("eval", "Compare a generated graph with its input");
  add_common(ev, o);
  ev->add_option("--input", o.inputs, "Input edge list")->required()->expected(1);
  ev->add_option("--attrs", o.attrs, "Attribute CSV for the input")->expected(1);
  ev->add_option("--generated", o.generated, "Generated edge list")->required();

  auto* sw = app.add_subcommand("sweep", "Modularity ratio, entropy and attack rate over an alpha grid");
  add_common(sw, o);
  add_sgf(sw, o);
  add_preset(sw, o);
  sw->add_option("--input", o.inputs, "Input edge list")->expected(1);
  sw->add_option("--attrs", o.attrs, "Attribute CSV for the input")->expected(1);
  sw->add_option("--alphas", o.alphas, "start:stop:step or comma list");
  sw->add_option("--runs", o.runs, "Draws per alpha");
  sw->add_option("--seed-fraction", o.seed_fraction, "Fraction of nodes known to the attacker");

  auto* at = app.add_subcommand("attack", "Distance-vector de-anonymization rate");
  add_common(at, o);
  at->add_option("--input", o.inputs, "Original edge list")->required()->expected(1);
  at->add_option("--anonymized", o.anonymized, "Anonymized edge list on the same node ids")->required();
  at->add_option("--seed-fraction", o.seed_fraction, "Fraction of nodes known to the attacker");

  auto* be = app.add_subcommand("bench", "Strategy comparison table, or the normalization study");
  add_common(be, o);
  add_sgf(be, o);
  add_preset(be, o);
  be->add_option("--input", o.inputs, "Extra input edge lists, one dataset each");
  be->add_option("--attrs", o.attrs, "Attribute CSVs matching --input");
  be->add_option("--strategies", o.strategies, "Comma list of sgf:<alpha>, dcsbm, trajanovski");
  be->add_option("--runs", o.runs, "Runs per (strategy, graph)");
  be->add_option("--graphs", o.graphs, "Graphs drawn from the preset");
  be->add_option("--alphas", o.alphas, "Alpha grid of the normalization study");

  try {
    apply_thread_cap();
    std::vector<std::string> args(argv + 1, argv + argc);
    if (!args.empty()) {
      const CLI::App* sub = nullptr;
      for (const auto* s : {gen, ev, sw, at, be})
        if (s->get_name() == args[0]) sub = s;
      for (std::size_t i = 1; sub != nullptr && i < args.size(); ++i) {
        std::string path;
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        else if (args[i].starts_with("--config=")) path = args[i].substr(9);
        if (path.empty()) continue;
        auto extra = config_args(path, *sub);
        args.insert(args.begin() + 1, extra.begin(), extra.end());
        break;
      }
    }
    std::vector<const char*> cargs{argv[0]};
    for (const auto& a : args) cargs.push_back(a.c_str());
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (gen->parsed()) return run_generate(o, out);
    if (ev->parsed()) return run_eval(o, out);
    if (sw->parsed()) return run_sweep(o, out);
    if (at->parsed()) return run_attack(o, out);
    if (be->parsed()) return run_bench(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

int dispatch(int argc, const char* const* argv) { return dispatch(argc, argv, std::cout, std::cerr); }

}  // namespace sgf::cli
