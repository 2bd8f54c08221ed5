#include "cli/commands.hpp"

#include <cmath>
#include <sstream>
#include <variant>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "greyvar/error.hpp"
#include "greyvar/inference.hpp"
#include "greyvar/io.hpp"
#include "greyvar/parallel.hpp"
#include "greyvar/sampling.hpp"
#include "greyvar/special_functions.hpp"
#include "greyvar/stats.hpp"
#include "greyvar/validation.hpp"
#include "greyvar/variation.hpp"

#ifndef GREYVAR_VERSION
#define GREYVAR_VERSION "0.0.0"
#endif

namespace greyvar::cli {
namespace {

using nlohmann::json;

// Produces the paths a command analyses: read from a bundle, or simulated on
// substreams offset + i of the master seed.
class PathSource {
public:
  PathSource(const ExperimentConfig& c, const GreyParams& params, std::uint64_t stream_offset)
      : stream_offset_(stream_offset), n_paths_(c.n_paths) {
    if (!c.input.empty()) {
      stored_ = read_bundle_file(c.input);
      n_paths_ = stored_.size();
      return;
    }
    seed_ = *c.master_seed;
    const Grid grid = c.grid == "dyadic" ? Grid::dyadic(c.level) : Grid::uniform(c.steps);
    if (c.method == "cholesky") {
      sampler_.emplace<CholeskyFbm>(params.hurst(), grid);
    } else {
      sampler_.emplace<GgbmSampler>(params, grid);
    }
  }

  std::size_t size() const noexcept { return n_paths_; }

  SamplePath get(std::size_t i) const {
    if (!stored_.empty()) return stored_[i];
    const RngSpec rng{seed_, stream_offset_ + i};
    return std::visit(
        [&](const auto& s) -> SamplePath {
          if constexpr (std::is_same_v<std::decay_t<decltype(s)>, std::monostate>) {
            fail(ErrorKind::Input, "no path source");
          } else {
            return s.sample(rng);
          }
        },
        sampler_);
  }

private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_offset_ = 0;
  std::size_t n_paths_ = 0;
  std::vector<SamplePath> stored_;
  std::variant<std::monostate, GgbmSampler, CholeskyFbm> sampler_;
};

GreyParams config_params(const ExperimentConfig& c) { return GreyParams(c.alpha, c.beta); }

json path_json(const SamplePath& path) {
  json j;
  j["grid"] = path.grid().is_dyadic() ? "dyadic" : "uniform";
  j["resolution"] = path.grid().resolution();
  j["master_seed"] = path.seed().master_seed;
  j["stream_id"] = path.seed().stream_id;
  if (path.params()) j["params"] = {path.params()->alpha(), path.params()->beta()};
  j["values"] = std::vector<double>(path.values().begin(), path.values().end());
  return j;
}

json label_json(const TrichotomyLabel& label) {
  json j;
  if (label.is_zero()) {
    j["regime"] = "Zero";
  } else if (label.is_infinite()) {
    j["regime"] = "Infinite";
  } else {
    j["regime"] = "CriticalFinite";
    j["limit"] = label.limit();
  }
  return j;
}

// ---------------------------------------------------------------------------

CommandOutput cmd_sample(const ExperimentConfig& c, unsigned threads) {
  const PathSource source(c, config_params(c), 0);
  std::vector<SamplePath> paths;
  paths.reserve(source.size());
  for (std::size_t i = 0; i < source.size(); ++i) paths.push_back(source.get(i));
  (void)threads;

  CommandOutput out;
  out.results["n_paths"] = paths.size();
  if (c.format == "json") {
    out.results["paths"] = json::array();
    for (const auto& p : paths) out.results["paths"].push_back(path_json(p));
  } else if (c.format == "csv") {
    std::ostringstream os;
    for (const auto& p : paths) write_path_csv(os, p);
    out.csv = os.str();
  } else {
    std::ostringstream os(std::ios::binary);
    write_bundle(os, paths);
    out.binary = os.str();
  }
  return out;
}

CommandOutput cmd_variation(const ExperimentConfig& c, unsigned threads) {
  const PathSource source(c, config_params(c), 0);
  const std::size_t n = source.size();
  const std::size_t np = c.p_list.size();
  // per_path[i][k]: records for path i, exponent k.
  std::vector<std::vector<std::vector<VariationRecord>>> per_path(n);
  std::vector<std::vector<double>> renorm(n);
  parallel_for(n, threads, [&](std::size_t i) {
    const SamplePath path = source.get(i);
    per_path[i].resize(np);
    for (std::size_t k = 0; k < np; ++k) {
      const double p = c.p_list[k];
      if (c.renormalized) {
        renorm[i].push_back(renormalized_statistic(path, p, c.alpha));
        per_path[i][k].push_back(p_variation_sum(path, p));
      } else if (path.grid().is_dyadic()) {
        const int top = static_cast<int>(path.grid().resolution());
        const int hi = c.level_hi == 0 ? top : c.level_hi;
        per_path[i][k] = variation_sequence(path, p, std::min(c.level_lo, hi), hi);
      } else {
        per_path[i][k].push_back(p_variation_sum(path, p));
      }
    }
  });

  CommandOutput out;
  json rows = json::array();
  for (std::size_t k = 0; k < np; ++k) {
    json row;
    row["p"] = c.p_list[k];
    if (c.input.empty()) row["trichotomy"] = label_json(variation_trichotomy(c.alpha, c.beta, c.p_list[k]));
    json levels = json::array();
    const std::size_t n_levels = n == 0 ? 0 : per_path[0][k].size();
    std::vector<double> medians;
    for (std::size_t l = 0; l < n_levels; ++l) {
      std::vector<double> values(n);
      for (std::size_t i = 0; i < n; ++i) values[i] = per_path[i][k][l].value;
      const auto m = moments_of(values);
      medians.push_back(median(values));
      levels.push_back({{"level", per_path[0][k][l].resolution},
                        {"mean", m.mean()},
                        {"median", medians.back()},
                        {"sd", m.std_dev()}});
    }
    row["levels"] = levels;
    if (medians.size() >= 2 && medians.front() > 0.0) {
      row["median_ratio_last_to_first"] = medians.back() / medians.front();
    }
    if (c.renormalized) {
      std::vector<double> z(n);
      for (std::size_t i = 0; i < n; ++i) z[i] = renorm[i][k];
      const auto m = moments_of(z);
      row["renormalized"] = {{"mean", m.mean()}, {"sd", m.std_dev()}, {"median", median(z)}};
      if (c.input.empty()) row["expected_limit"] = ggbm_abs_moment(c.beta, c.p_list[k]);
    }
    rows.push_back(row);
  }
  out.results["n_paths"] = n;
  out.results["rows"] = rows;
  if (c.format == "csv") {
    std::ostringstream os;
    for (std::size_t i = 0; i < n; ++i) {
      os << "# path=" << i << "\n";
      std::vector<VariationRecord> flat;
      for (const auto& seq : per_path[i]) flat.insert(flat.end(), seq.begin(), seq.end());
      write_variation_csv(os, flat);
    }
    out.csv = os.str();
  }
  return out;
}

CommandOutput cmd_estimate(const ExperimentConfig& c, unsigned threads) {
  const PathSource source(c, config_params(c), 0);
  const std::size_t n = source.size();
  const GammaRegion region = c.region == "high" ? GammaRegion::High : GammaRegion::Low;
  struct Row {
    AlphaEstimate alpha;
    std::optional<BetaEstimate> beta;
    std::string beta_error;
  };
  std::vector<Row> rows(n);
  parallel_for(n, threads, [&](std::size_t i) {
    const SamplePath path = source.get(i);
    const int top = static_cast<int>(path.grid().resolution());
    const int hi = c.level_hi == 0 ? top : c.level_hi;
    const int lo = c.level_lo > 1 ? c.level_lo : std::max(1, std::min(8, hi - 3));
    rows[i].alpha = estimate_alpha(path, c.p, lo, hi);
    const double alpha_for_beta = c.beta_alpha.value_or(rows[i].alpha.alpha);
    if (alpha_for_beta > 0.0 && alpha_for_beta < 2.0) {
      try {
        rows[i].beta = estimate_beta(path, alpha_for_beta, region);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Estimation) throw;
        rows[i].beta_error = e.what();
      }
    } else {
      rows[i].beta_error = "alpha estimate outside (0, 2)";
    }
  });

  CommandOutput out;
  json per_path = json::array();
  std::vector<double> alphas, betas;
  std::ostringstream csv;
  csv << "path,alpha_hat,alpha_se,alpha_boundary,beta_hat,beta_boundary\n";
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = rows[i];
    alphas.push_back(r.alpha.alpha);
    json j{{"alpha_hat", r.alpha.alpha},
           {"alpha_se", r.alpha.std_error},
           {"alpha_boundary", r.alpha.boundary},
           {"levels", {r.alpha.level_lo, r.alpha.level_hi}}};
    if (r.beta) {
      betas.push_back(r.beta->beta);
      j["beta_hat"] = r.beta->beta;
      j["beta_boundary"] = r.beta->boundary;
      j["critical_variation"] = r.beta->variation;
    } else {
      j["beta_error"] = r.beta_error;
    }
    per_path.push_back(j);
    csv << i << ',' << format_double(r.alpha.alpha) << ',' << format_double(r.alpha.std_error)
        << ',' << (r.alpha.boundary ? 1 : 0) << ','
        << (r.beta ? format_double(r.beta->beta) : std::string("nan")) << ','
        << (r.beta ? (r.beta->boundary ? 1 : 0) : 1) << '\n';
  }
  out.results["n_paths"] = n;
  out.results["region"] = c.region;
  if (!alphas.empty()) {
    out.results["alpha_mean"] = moments_of(alphas).mean();
    out.results["alpha_median"] = median(alphas);
  }
  if (!betas.empty()) out.results["beta_median"] = median(betas);
  out.results["per_path"] = per_path;
  if (c.format == "csv") out.csv = csv.str();
  return out;
}

json decision_json(const Decision& d) {
  json j{{"label", to_string(d.label)},
         {"V1", d.v_first},
         {"V2", d.v_second},
         {"mu1", d.mu_first},
         {"mu2", d.mu_second},
         {"d1", d.d_first},
         {"d2", d.d_second},
         {"threshold", d.threshold},
         {"level", d.level}};
  if (d.drift) {
    j["drift"] = {{"levels", {d.drift->level_lo, d.drift->level_hi}},
                  {"slope1", d.drift->slope_first},
                  {"slope2", d.drift->slope_second},
                  {"loser_drifts", d.drift->loser_drifts}};
  }
  return j;
}

CommandOutput cmd_discriminate(const ExperimentConfig& c, unsigned threads) {
  std::vector<Candidate> candidates;
  for (const auto& p : c.candidates) candidates.emplace_back(GreyParams(p.alpha, p.beta));
  DiscriminateOptions options;
  options.threshold = c.threshold;

  CommandOutput out;
  std::ostringstream csv;
  csv << "alpha1,beta1,alpha2,beta2,truth,first,second,inconclusive,accuracy\n";

  if (!c.input.empty()) {
    // Stored paths against the first two candidates.
    const PathSource source(c, candidates[0].params(), 0);
    std::vector<Decision> decisions(source.size());
    parallel_for(source.size(), threads, [&](std::size_t i) {
      decisions[i] = discriminate(source.get(i), candidates[0], candidates[1], options);
    });
    json records = json::array();
    for (const auto& d : decisions) records.push_back(decision_json(d));
    out.results["records"] = records;
    csv.str("");
    csv << "path,label,V1,V2,d1,d2\n";
    for (std::size_t i = 0; i < decisions.size(); ++i) {
      const auto& d = decisions[i];
      csv << i << ',' << to_string(d.label) << ',' << format_double(d.v_first) << ','
          << format_double(d.v_second) << ',' << format_double(d.d_first) << ','
          << format_double(d.d_second) << '\n';
    }
    if (c.format == "csv") out.csv = csv.str();
    return out;
  }

  // Distinguishable unordered pairs.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  json skipped = json::array();
  for (std::size_t a = 0; a < candidates.size(); ++a) {
    for (std::size_t b = a + 1; b < candidates.size(); ++b) {
      const auto check = distinguishability_check(candidates[a], candidates[b]);
      if (check.distinguishable) {
        pairs.emplace_back(a, b);
      } else {
        skipped.push_back({{"pair", {a, b}}, {"reason", check.reason}});
      }
    }
  }
  // counts[pair][truth side][label]
  std::vector<std::array<std::array<std::size_t, 3>, 2>> counts(pairs.size());
  json records = json::array();
  for (std::size_t truth = 0; truth < candidates.size(); ++truth) {
    std::vector<std::size_t> involved;
    for (std::size_t q = 0; q < pairs.size(); ++q) {
      if (pairs[q].first == truth || pairs[q].second == truth) involved.push_back(q);
    }
    if (involved.empty()) continue;
    const PathSource source(c, candidates[truth].params(), truth * c.n_paths);
    std::vector<std::vector<Decision>> decisions(source.size());
    parallel_for(source.size(), threads, [&](std::size_t i) {
      const SamplePath path = source.get(i);
      for (std::size_t q : involved) {
        decisions[i].push_back(
            discriminate(path, candidates[pairs[q].first], candidates[pairs[q].second], options));
      }
    });
    for (std::size_t i = 0; i < decisions.size(); ++i) {
      for (std::size_t k = 0; k < involved.size(); ++k) {
        const std::size_t q = involved[k];
        const std::size_t side = pairs[q].first == truth ? 0 : 1;
        ++counts[q][side][static_cast<std::size_t>(decisions[i][k].label)];
        if (c.records) {
          json r = decision_json(decisions[i][k]);
          r["pair"] = {pairs[q].first, pairs[q].second};
          r["truth"] = truth;
          r["path"] = i;
          records.push_back(r);
        }
      }
    }
  }

  json matrix = json::array();
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    const auto& first = candidates[pairs[q].first].params();
    const auto& second = candidates[pairs[q].second].params();
    for (std::size_t side = 0; side < 2; ++side) {
      const auto& row = counts[q][side];
      const double total = static_cast<double>(row[0] + row[1] + row[2]);
      const double accuracy = total > 0 ? static_cast<double>(row[side]) / total : 0.0;
      const std::size_t truth = side == 0 ? pairs[q].first : pairs[q].second;
      matrix.push_back({{"pair", {pairs[q].first, pairs[q].second}},
                        {"first", {first.alpha(), first.beta()}},
                        {"second", {second.alpha(), second.beta()}},
                        {"truth", truth},
                        {"counts", {{"First", row[0]}, {"Second", row[1]}, {"Inconclusive", row[2]}}},
                        {"accuracy", accuracy},
                        {"inconclusive_rate", total > 0 ? static_cast<double>(row[2]) / total : 0.0}});
      csv << format_double(first.alpha()) << ',' << format_double(first.beta()) << ','
          << format_double(second.alpha()) << ',' << format_double(second.beta()) << ',' << truth
          << ',' << row[0] << ',' << row[1] << ',' << row[2] << ',' << format_double(accuracy)
          << '\n';
    }
  }
  json cand = json::array();
  for (const auto& cd : candidates) {
    cand.push_back({{"params", {cd.params().alpha(), cd.params().beta()}},
                    {"mu", cd.mu()},
                    {"p_crit", cd.p_crit()}});
  }
  out.results["candidates"] = cand;
  out.results["confusion"] = matrix;
  out.results["skipped_pairs"] = skipped;
  if (c.records) out.results["records"] = records;
  if (c.format == "csv") out.csv = csv.str();
  return out;
}

json special_function_checks() {
  json checks = json::array();
  auto add = [&](const std::string& name, double error, double tol) {
    checks.push_back({{"check", name}, {"max_error", error}, {"tolerance", tol}, {"pass", error <= tol}});
  };
  double err = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double s = 50.0 * i / 99.0;
    err = std::max(err, std::abs(mittag_leffler(1.0, s) - std::exp(-s)));
  }
  add("E_1(-s) = exp(-s), s in [0, 50]", err, 1e-12);
  add("E_1/2(-1) = e erfc(1)", std::abs(mittag_leffler(0.5, 1.0) - std::exp(1.0) * std::erfc(1.0)),
      1e-8);
  boost::math::quadrature::exp_sinh<double> quad;
  err = 0.0;
  for (double beta : {0.3, 0.5, 0.7}) {
    for (double s : {0.1, 1.0, 5.0}) {
      const double lt = quad.integrate([&](double tau) { return std::exp(-s * tau) * mwright_pdf(beta, tau); });
      err = std::max(err, std::abs(lt - mittag_leffler(beta, s)));
    }
  }
  add("Laplace transform of M_beta = E_beta(-s)", err, 1e-6);
  err = 0.0;
  for (double beta : {0.3, 0.5, 0.7}) {
    for (double delta : {0.5, 1.0, 2.0}) {
      const double m = quad.integrate([&](double tau) { return std::pow(tau, delta) * mwright_pdf(beta, tau); });
      err = std::max(err, std::abs(m - mwright_moment(beta, delta)));
    }
  }
  add("moments of M_beta", err, 1e-6);
  return checks;
}

CommandOutput cmd_validate(const ExperimentConfig& c, unsigned threads) {
  CommandOutput out;
  bool all_pass = true;
  json reports = json::array();
  auto has = [&](const char* name) {
    return std::find(c.checks.begin(), c.checks.end(), name) != c.checks.end();
  };
  if (has("special")) {
    const json checks = special_function_checks();
    for (const auto& ch : checks) all_pass = all_pass && ch["pass"].get<bool>();
    reports.push_back({{"check", "special"}, {"rows", checks}});
  }
  for (std::size_t k = 0; k < c.validate_params.size(); ++k) {
    const GreyParams params(c.validate_params[k].alpha, c.validate_params[k].beta);
    const json pj = {params.alpha(), params.beta()};
    // Disjoint substream ranges per parameter set and check.
    const std::uint64_t base = (static_cast<std::uint64_t>(k) * 3) << 32;
    if (has("cf")) {
      CfCheckSpec spec{c.thetas, c.s, c.t, c.n_paths, c.cf_level};
      const auto r = check_increment_cf(params, spec, {*c.master_seed, base}, threads);
      json rows = json::array();
      for (const auto& row : r.rows) {
        rows.push_back({{"theta", row.theta}, {"empirical_re", row.empirical_re},
                        {"empirical_im", row.empirical_im}, {"theoretical", row.theoretical},
                        {"z_re", row.z_re}, {"z_im", row.z_im}, {"pass", row.pass}});
      }
      all_pass = all_pass && r.pass;
      reports.push_back({{"check", "cf"}, {"params", pj}, {"s", c.s}, {"t", c.t}, {"rows", rows}, {"pass", r.pass}});
    }
    if (has("moments")) {
      const auto r = check_even_moments(params, c.t, c.moment_orders, c.n_paths,
                                        {*c.master_seed, base + (std::uint64_t{1} << 32)}, threads);
      json rows = json::array();
      for (const auto& row : r.rows) {
        rows.push_back({{"order", row.order}, {"empirical", row.empirical}, {"theoretical", row.theoretical},
                        {"std_error", row.std_error}, {"z", row.z}, {"pass", row.pass}});
      }
      all_pass = all_pass && r.pass;
      reports.push_back({{"check", "moments"}, {"params", pj}, {"t", c.t}, {"rows", rows}, {"pass", r.pass}});
    }
    if (has("mixing")) {
      const auto r = check_mixing_decay(params, c.lags, c.n_paths,
                                        {*c.master_seed, base + (std::uint64_t{2} << 32)}, threads);
      json rows = json::array();
      for (const auto& row : r.rows) {
        rows.push_back({{"lag", row.lag}, {"covariance", row.covariance}, {"std_error", row.std_error},
                        {"z", row.z}, {"fbm_autocovariance", row.fbm_autocovariance}});
      }
      all_pass = all_pass && r.decayed;
      reports.push_back({{"check", "mixing"},
                         {"params", pj},
                         {"probe", r.probe},
                         {"note", "unit increments from a level-" + std::to_string(r.level) +
                                      " path on [0,1] scaled by 2^(level*alpha/2)"},
                         {"rows", rows},
                         {"pass", r.decayed}});
    }
  }
  out.results["reports"] = reports;
  out.results["pass"] = all_pass;
  return out;
}

}  // namespace

CommandOutput run_command(const ExperimentConfig& config, unsigned threads) {
  validate_config(config);
  switch (config.command) {
    case Command::Sample: return cmd_sample(config, threads);
    case Command::Variation: return cmd_variation(config, threads);
    case Command::Estimate: return cmd_estimate(config, threads);
    case Command::Discriminate: return cmd_discriminate(config, threads);
    case Command::Validate: return cmd_validate(config, threads);
  }
  fail(ErrorKind::Usage, "unknown command");
}

json make_report(const ExperimentConfig& config, const CommandOutput& output, double wall_seconds) {
  return json{{"command", to_string(config.command)},
              {"config", to_json(config)},
              {"results", output.results},
              {"version", GREYVAR_VERSION},
              {"wall_time_s", wall_seconds}};
}

int exit_code_for(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    switch (err->kind()) {
      case ErrorKind::Numerical:
      case ErrorKind::Accuracy:
      case ErrorKind::Estimation:
        return 3;
      case ErrorKind::Io:
        return 4;
      default:
        return 2;
    }
  }
  if (dynamic_cast<const nlohmann::json::exception*>(&e)) return 2;
  return 3;
}

}  // namespace greyvar::cli
