#include "sgf/eval.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <memory>
#include <numeric>
#include <set>

#include "sgf/baselines.hpp"
#include "sgf/error.hpp"
#include "sgf/kernels.hpp"
#include "sgf/rng.hpp"

namespace sgf {

namespace {

constexpr double kZ99 = 2.576;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Metric ratio(const Metric& num, const Metric& den) {
  if (!num || !den || *den == 0.0) return std::nullopt;
  return *num / *den;
}

std::vector<double> degrees_of(const Graph& g) { return degree_vector(g).degrees; }

}  // namespace

// ---- metrics -------------------------------------------------------------

InputProfile::InputProfile(const Graph& g, std::uint64_t louvain_seed)
    : graph(g), communities(Partition::singletons(static_cast<std::size_t>(g.size()))) {
  clustering = average_clustering(g);
  if (g.edge_count() == 0) {
    for (const auto& [name, values] : g.attributes()) attribute_q[name] = std::nullopt;
    return;
  }
  auto best = louvain_maximize(g, louvain_seed);
  q_star = best.modularity;
  communities = std::move(best.partition);
  for (const auto& [name, values] : g.attributes())
    attribute_q[name] = modularity(g, partition_from_categories(values));
}

Metric pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

MetricsReport compare(const InputProfile& input, const Graph& output, std::uint64_t rng_seed) {
  if (input.graph.size() != output.size())
    throw ValidationError("compare: input and output differ in node count");
  MetricsReport r;
  r.q_in = input.q_star;
  r.m_in = input.q_star ? input.communities.count() : 0;
  r.clustering_in = input.clustering;
  r.clustering_out = average_clustering(output);

  const bool out_has_edges = output.edge_count() > 0;
  if (out_has_edges) {
    auto best = louvain_maximize(output, rng_seed);
    r.q_out = best.modularity;
    r.m_out = best.partition.count();
  }
  r.modularity_ratio = ratio(r.q_out, r.q_in);
  if (r.q_in && r.q_out) r.partition_number_ratio = static_cast<double>(r.m_out) / r.m_in;
  if (r.clustering_in > 0.0) r.clustering_ratio = r.clustering_out / r.clustering_in;
  r.degree_correlation = pearson(degrees_of(input.graph), degrees_of(output));

  for (const auto& [name, q_in] : input.attribute_q) {
    Metric q_out;
    if (out_has_edges)
      q_out = modularity(output, partition_from_categories(input.graph.attributes().at(name)));
    r.attribute_modularity_ratios[name] = ratio(q_out, q_in);
  }
  return r;
}

MetricsReport compare(const Graph& input, const Graph& output, std::uint64_t rng_seed) {
  return compare(InputProfile(input, rng_seed), output, rng_seed);
}

// ---- experiment harness --------------------------------------------------

Strategy Strategy::parse(std::string_view text) {
  Strategy s;
  if (text == "dcsbm") {
    s.kind = Kind::dcsbm;
    return s;
  }
  if (text == "trajanovski") {
    s.kind = Kind::trajanovski;
    return s;
  }
  if (text.starts_with("sgf:")) {
    const auto num = text.substr(4);
    double a = 0.0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), a);
    if (ec != std::errc{} || ptr != num.data() + num.size())
      throw ValidationError("bad alpha in strategy '" + std::string(text) + "'");
    s.alpha = Alpha(a).value();
    return s;
  }
  throw ValidationError("unknown strategy '" + std::string(text) +
                        "' (expected sgf:<alpha>, dcsbm or trajanovski)");
}

std::string Strategy::id() const {
  switch (kind) {
    case Kind::sgf: return "sgf:" + format_number(alpha);
    case Kind::dcsbm: return "dcsbm";
    case Kind::trajanovski: return "trajanovski";
  }
  return "?";
}

std::uint64_t run_seed(std::uint64_t master, const std::string& strategy, const std::string& dataset,
                       std::size_t graph, std::size_t run) {
  return derive_seed(master, {fnv1a(strategy), fnv1a(dataset), graph, run});
}

Summary summarize(const std::vector<double>& values) {
  Summary s;
  s.runs = values.size();
  if (values.empty()) return s;
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  s.mean = mean;
  if (values.size() >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    s.std = sd;
    s.ci99 = kZ99 * sd / std::sqrt(n);
  }
  return s;
}

std::vector<RunRecord> run_experiment_records(const std::vector<Strategy>& strategies,
                                              const std::vector<Dataset>& datasets,
                                              std::size_t runs_per_pair, std::uint64_t rng_seed) {
  if (runs_per_pair < 2) throw ValidationError("run_experiment needs runs_per_pair >= 2");

  // Per-input work shared by every strategy and run.
  struct Prepared {
    std::unique_ptr<InputProfile> profile;
    std::unique_ptr<Forge> forge[2];  // indexed by Transformation
    std::string error[2];
  };
  std::vector<std::pair<std::size_t, std::size_t>> inputs;
  for (std::size_t d = 0; d < datasets.size(); ++d)
    for (std::size_t g = 0; g < datasets[d].graphs.size(); ++g) inputs.emplace_back(d, g);
  std::vector<Prepared> prepared(inputs.size());
  bool need[2] = {false, false};
  for (const auto& s : strategies)
    if (s.kind == Strategy::Kind::sgf) need[static_cast<int>(s.transformation)] = true;

#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto [d, g] = inputs[i];
    const Graph& graph = datasets[d].graphs[g];
    prepared[i].profile = std::make_unique<InputProfile>(
        graph, derive_seed(rng_seed, {fnv1a(datasets[d].id), g, 0xC0FFEEULL}));
    for (int t = 0; t < 2; ++t) {
      if (!need[t]) continue;
      try {
        prepared[i].forge[t] = std::make_unique<Forge>(graph, static_cast<Transformation>(t));
      } catch (const Error& e) {
        prepared[i].error[t] = e.what();
      }
    }
  }

  std::vector<RunRecord> records;
  std::vector<std::size_t> input_of;
  for (std::size_t s = 0; s < strategies.size(); ++s)
    for (std::size_t i = 0; i < inputs.size(); ++i)
      for (std::size_t r = 0; r < runs_per_pair; ++r) {
        records.push_back({s, inputs[i].first, inputs[i].second, r, std::nullopt, {}});
        input_of.push_back(i);
      }

#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < records.size(); ++k) {
    RunRecord& rec = records[k];
    const Strategy& strat = strategies[rec.strategy];
    const Prepared& prep = prepared[input_of[k]];
    const InputProfile& profile = *prep.profile;
    const std::uint64_t seed =
        run_seed(rng_seed, strat.id(), datasets[rec.dataset].id, rec.graph, rec.run);
    try {
      Graph out;
      switch (strat.kind) {
        case Strategy::Kind::sgf: {
          const int t = static_cast<int>(strat.transformation);
          if (!prep.forge[t]) throw DegenerateError(prep.error[t]);
          SgfConfig cfg{Alpha(strat.alpha), strat.rule, derive_seed(seed, {1}), strat.transformation};
          out = prep.forge[t]->generate(cfg);
          break;
        }
        case Strategy::Kind::dcsbm: {
          auto cfg = dcsbm_config_from(profile.graph, profile.communities);
          cfg.rng_seed = derive_seed(seed, {1});
          out = dcsbm_generate(cfg).with_attributes(profile.graph.attributes());
          break;
        }
        case Strategy::Kind::trajanovski: {
          if (!profile.q_star) throw DegenerateError("input graph has no edges");
          TrajanovskiConfig cfg;
          cfg.q_target = *profile.q_star;
          cfg.m = profile.communities.count();
          cfg.n = profile.graph.size();
          cfg.l = static_cast<std::int64_t>(profile.graph.edge_count());
          cfg.rng_seed = derive_seed(seed, {1});
          out = trajanovski_generate(cfg).graph.with_attributes(profile.graph.attributes());
          break;
        }
      }
      rec.metrics = compare(profile, out, derive_seed(seed, {2}));
    } catch (const Error& e) {
      rec.failure = e.what();
    }
  }
  return records;
}

std::vector<ExperimentRow> aggregate(const std::vector<Strategy>& strategies,
                                     const std::vector<Dataset>& datasets,
                                     const std::vector<RunRecord>& records) {
  std::vector<ExperimentRow> rows;
  for (std::size_t s = 0; s < strategies.size(); ++s)
    for (std::size_t d = 0; d < datasets.size(); ++d) {
      ExperimentRow row;
      row.strategy = strategies[s].id();
      row.dataset = datasets[d].id;
      std::vector<const MetricsReport*> ok;
      std::set<std::string> attrs;
      for (const auto& rec : records) {
        if (rec.strategy != s || rec.dataset != d) continue;
        ++row.attempts;
        if (!rec.metrics) {
          ++row.failures;
          continue;
        }
        ok.push_back(&*rec.metrics);
        for (const auto& [name, v] : rec.metrics->attribute_modularity_ratios) attrs.insert(name);
      }
      auto collect = [&](auto get) {
        std::vector<double> v;
        for (const auto* m : ok)
          if (const Metric x = get(*m)) v.push_back(*x);
        return summarize(v);
      };
      row.metrics.emplace_back("modularity_ratio", collect([](const MetricsReport& m) { return m.modularity_ratio; }));
      row.metrics.emplace_back("partition_number_ratio",
                               collect([](const MetricsReport& m) { return m.partition_number_ratio; }));
      row.metrics.emplace_back("clustering_ratio", collect([](const MetricsReport& m) { return m.clustering_ratio; }));
      row.metrics.emplace_back("degree_correlation",
                               collect([](const MetricsReport& m) { return m.degree_correlation; }));
      for (const auto& name : attrs)
        row.metrics.emplace_back("attr:" + name, collect([&](const MetricsReport& m) -> Metric {
                                   auto it = m.attribute_modularity_ratios.find(name);
                                   return it == m.attribute_modularity_ratios.end() ? std::nullopt : it->second;
                                 }));
      rows.push_back(std::move(row));
    }
  return rows;
}

std::vector<ExperimentRow> run_experiment(const std::vector<Strategy>& strategies,
                                          const std::vector<Dataset>& datasets,
                                          std::size_t runs_per_pair, std::uint64_t rng_seed) {
  return aggregate(strategies, datasets, run_experiment_records(strategies, datasets, runs_per_pair, rng_seed));
}

std::string experiment_csv(const std::vector<ExperimentRow>& rows) {
  std::string out = "strategy,dataset,metric,mean,std,ci99,runs\n";
  for (const auto& row : rows) {
    for (const auto& [name, s] : row.metrics)
      out += row.strategy + ',' + row.dataset + ',' + name + ',' + format_metric(s.mean) + ',' +
             format_metric(s.std) + ',' + format_metric(s.ci99) + ',' + std::to_string(s.runs) + '\n';
    out += row.strategy + ',' + row.dataset + ",failures," + std::to_string(row.failures) + ",0,0," +
           std::to_string(row.attempts) + '\n';
  }
  return out;
}

// ---- normalization study -------------------------------------------------

std::vector<NormalizationRow> normalization_study(const std::vector<StudyInput>& inputs,
                                                  const std::vector<double>& alphas,
                                                  const std::vector<NormalizationRule>& rules) {
  std::vector<std::vector<NormalizationRow>> per_input(inputs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto& in = inputs[i];
    const Forge forge(in.graph, Transformation::adjacency);
    const RealMatrix a = in.graph.adjacency();
    for (double alpha : alphas) {
      const RealMatrix a_tilde = forge.approximated_adjacency(Alpha(alpha));
      const double dist_spectral = kernels::symmetric_spectral_norm(a - a_tilde);
      for (const auto& rule : rules) {
        NormalizationRow row{in.id, in.family, alpha, rule.name(), dist_spectral, std::nullopt, std::nullopt};
        try {
          const auto p = normalize(a_tilde, rule);
          row.dist_normed = kernels::symmetric_spectral_norm(a - p.matrix());
          row.entropy = normalized_entropy(p).normalized;
        } catch (const DegenerateError&) {
        }
        per_input[i].push_back(std::move(row));
      }
    }
  }
  std::vector<NormalizationRow> rows;
  for (auto& v : per_input) rows.insert(rows.end(), v.begin(), v.end());
  return rows;
}

std::string normalization_csv(const std::vector<NormalizationRow>& rows) {
  std::string out = "graph,family,alpha,rule,dist_spectral,dist_normed,entropy\n";
  for (const auto& r : rows)
    out += r.graph + ',' + r.family + ',' + format_number(r.alpha) + ',' + r.rule + ',' +
           format_number(r.dist_spectral) + ',' + format_metric(r.dist_normed) + ',' +
           format_metric(r.entropy) + '\n';
  return out;
}

// ---- de-anonymization ----------------------------------------------------

std::vector<int> bfs_distances(const Graph& g, NodeId source, int unreachable) {
  std::vector<int> dist(static_cast<std::size_t>(g.size()), -1);
  std::vector<NodeId> queue{source};
  dist[static_cast<std::size_t>(source)] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId u = queue[head];
    for (NodeId v : g.neighbors(u))
      if (dist[static_cast<std::size_t>(v)] < 0) {
        dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
        queue.push_back(v);
      }
  }
  for (auto& d : dist)
    if (d < 0) d = unreachable;
  return dist;
}

AttackResult dv_attack(const Graph& original, const Graph& anonymized, const AttackConfig& cfg) {
  if (!(cfg.seed_fraction > 0.0 && cfg.seed_fraction <= 1.0))
    throw ValidationError("dv_attack: seed_fraction must lie in (0, 1]");
  const auto n = static_cast<std::size_t>(original.size());
  Rng rng(cfg.rng_seed);
  std::vector<NodeId> nodes(n);
  std::iota(nodes.begin(), nodes.end(), NodeId{0});
  sgf::shuffle(nodes.begin(), nodes.end(), rng);
  const double want = cfg.seed_fraction * static_cast<double>(n);
  const auto count = std::max<std::size_t>(static_cast<std::size_t>(std::ceil(want - 1e-9 * want)), 1);
  nodes.resize(std::min(count, n));
  return dv_attack_with_seeds(original, anonymized, nodes, derive_seed(cfg.rng_seed, {0x7135ULL}));
}

AttackResult dv_attack_with_seeds(const Graph& original, const Graph& anonymized,
                                  std::span<const NodeId> seed_nodes, std::uint64_t tie_seed) {
  if (original.size() != anonymized.size())
    throw ValidationError("dv_attack: graphs differ in node count");
  const auto n = static_cast<std::size_t>(original.size());
  std::vector<bool> is_seed(n, false);
  for (NodeId s : seed_nodes) {
    if (s < 0 || static_cast<std::size_t>(s) >= n || is_seed[static_cast<std::size_t>(s)])
      throw ValidationError("dv_attack: seed nodes must be distinct ids in [0, n)");
    is_seed[static_cast<std::size_t>(s)] = true;
  }
  AttackResult res;
  res.seeds = seed_nodes.size();
  const std::vector<NodeId> seeds(seed_nodes.begin(), seed_nodes.end());
  std::vector<NodeId> targets;
  for (std::size_t v = 0; v < n; ++v)
    if (!is_seed[v]) targets.push_back(static_cast<NodeId>(v));
  if (targets.empty()) {
    res.identification_rate = 1.0;
    return res;
  }
  res.baseline_rate = 1.0 / static_cast<double>(targets.size());

  const int unreachable = static_cast<int>(n);
  const std::size_t s = seeds.size();
  std::vector<std::vector<int>> d_orig(s), d_anon(s);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < s; ++i) {
    d_orig[i] = bfs_distances(original, seeds[i], unreachable);
    d_anon[i] = bfs_distances(anonymized, seeds[i], unreachable);
  }

  const std::size_t t = targets.size();
  struct Candidate {
    std::int64_t d2;
    std::uint64_t tie;
    std::uint32_t u, v;  // indices into targets
  };
  std::vector<Candidate> pairs(t * t);
#pragma omp parallel for schedule(static)
  for (std::size_t a = 0; a < t; ++a) {
    const auto u = static_cast<std::size_t>(targets[a]);
    for (std::size_t b = 0; b < t; ++b) {
      const auto v = static_cast<std::size_t>(targets[b]);
      std::int64_t d2 = 0;
      for (std::size_t i = 0; i < s; ++i) {
        const std::int64_t diff = d_orig[i][u] - d_anon[i][v];
        d2 += diff * diff;
      }
      pairs[a * t + b] = {d2, derive_seed(tie_seed, {u, v}), static_cast<std::uint32_t>(a),
                          static_cast<std::uint32_t>(b)};
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Candidate& x, const Candidate& y) {
    if (x.d2 != y.d2) return x.d2 < y.d2;
    if (x.tie != y.tie) return x.tie < y.tie;
    return std::tie(x.u, x.v) < std::tie(y.u, y.v);
  });

  std::vector<bool> used_u(t, false), used_v(t, false);
  std::size_t matched = 0;
  for (const auto& c : pairs) {
    if (used_u[c.u] || used_v[c.v]) continue;
    used_u[c.u] = used_v[c.v] = true;
    if (c.u == c.v) ++res.correct;
    if (++matched == t) break;
  }
  res.identification_rate = static_cast<double>(res.correct) / static_cast<double>(t);
  return res;
}

// ---- privacy / utility sweep ---------------------------------------------

std::vector<SweepRow> alpha_sweep(const Graph& input, const std::vector<double>& alphas,
                                  const NormalizationRule& rule, Transformation t, std::size_t runs,
                                  double seed_fraction, std::uint64_t rng_seed) {
  if (runs < 1) throw ValidationError("alpha_sweep needs runs >= 1");
  const Forge forge(input, t);
  const InputProfile profile(input, derive_seed(rng_seed, {0}));
  std::vector<SweepRow> rows;
  for (double alpha : alphas) {
    const auto expected = forge.expected(Alpha(alpha), rule);
    SweepRow row;
    row.alpha = alpha;
    row.entropy = normalized_entropy(expected).normalized;
    const std::uint64_t alpha_seed = derive_seed(rng_seed, {std::bit_cast<std::uint64_t>(alpha)});
    std::vector<Metric> ratios(runs);
    std::vector<AttackResult> attacks(runs);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t r = 0; r < runs; ++r) {
      const std::uint64_t rs = derive_seed(alpha_seed, {r});
      const Graph out = sample_bernoulli(expected, derive_seed(rs, {1}));
      ratios[r] = compare(profile, out, derive_seed(rs, {2})).modularity_ratio;
      attacks[r] = dv_attack(input, out, {seed_fraction, derive_seed(rs, {3})});
    }
    std::vector<double> q, a;
    for (std::size_t r = 0; r < runs; ++r) {
      if (ratios[r]) q.push_back(*ratios[r]);
      a.push_back(attacks[r].identification_rate);
    }
    row.modularity_ratio = summarize(q);
    row.attack_rate = summarize(a);
    row.baseline_rate = attacks.front().baseline_rate;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "alpha,modularity_ratio,modularity_ratio_ci99,entropy,attack_rate,attack_rate_ci99,baseline_rate,runs\n";
  for (const auto& r : rows)
    out += format_number(r.alpha) + ',' + format_metric(r.modularity_ratio.mean) + ',' +
           format_metric(r.modularity_ratio.ci99) + ',' + format_number(r.entropy) + ',' +
           format_metric(r.attack_rate.mean) + ',' + format_metric(r.attack_rate.ci99) + ',' +
           format_number(r.baseline_rate) + ',' + std::to_string(r.attack_rate.runs) + '\n';
  return out;
}

// ---- formatting ----------------------------------------------------------

std::string format_number(double x) {
  if (!std::isfinite(x)) return "NA";
  if (x == 0.0) return "0";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string format_metric(const Metric& x) { return x ? format_number(*x) : "NA"; }

std::vector<double> parse_alpha_grid(std::string_view text) {
  auto num = [&](std::string_view tok) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty())
      throw ValidationError("bad alpha value '" + std::string(tok) + "'");
    return v;
  };
  auto snap = [](double v) { return std::round(v * 1e9) / 1e9; };
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string_view::npos) throw ValidationError("alpha grid must be start:stop:step");
    const double a = num(text.substr(0, c1)), b = num(text.substr(c1 + 1, c2 - c1 - 1)),
                 step = num(text.substr(c2 + 1));
    if (!(step > 0.0) || b < a) throw ValidationError("alpha grid needs step > 0 and stop >= start");
    for (std::size_t i = 0;; ++i) {
      const double v = a + static_cast<double>(i) * step;
      if (v > b + 1e-9) break;
      out.push_back(snap(v));
    }
  } else {
    std::size_t start = 0;
    while (start <= text.size()) {
      auto end = text.find(',', start);
      if (end == std::string_view::npos) end = text.size();
      out.push_back(snap(num(text.substr(start, end - start))));
      start = end + 1;
    }
  }
  for (double v : out) Alpha{v};
  return out;
}

}  // namespace sgf
