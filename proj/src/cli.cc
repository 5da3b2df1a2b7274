// Copyright 2026 The privimmune Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "privimmune/cli.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "privimmune/dp.h"
#include "privimmune/edge_list.h"
#include "privimmune/generators.h"
#include "privimmune/graph.h"
#include "privimmune/maxdeg.h"
#include "privimmune/multicover.h"
#include "privimmune/privacy_report.h"
#include "privimmune/records.h"
#include "privimmune/sir.h"
#include "privimmune/spectral.h"

namespace privimmune {
namespace {

constexpr char kSeedEnv[] = "PRIVIMMUNE_SEED";
// Brute-force optimum is exponential in the node count.
constexpr int32_t kBruteForceMax = 20;

struct RunConfig {
  std::string command;
  std::string graph_path;
  std::string generate;
  std::vector<double> epsilons{1.0};
  double delta = 1e-3;
  double epsilon1 = 0.0;
  std::optional<double> target;
  std::string mode;
  int32_t trials = 1;
  std::optional<uint64_t> seed;
  std::string out_path;
  std::string report_path;
  std::string privacy_model = "edge";
  std::optional<double> theta;
  std::string multiplicity = "owner";
  double threshold_constant = 6.0;
  std::string solution_path;
  std::string solution_out;
  double sir_p = 0.2;
  int32_t sir_initial = 20;
  int32_t sir_trials = 0;
  int32_t brute_force_limit = 12;
  int32_t threads = 0;
  bool record_timing = false;
};

struct InputGraph {
  Graph graph;
  // Empty for generated graphs, whose ids are already dense.
  std::vector<int64_t> original_ids;
  std::string descriptor;
};

struct JobResult {
  absl::Status status;
  std::vector<ExperimentRecord> records;
  std::vector<std::string> lines;
  std::vector<PrivacyReport> reports;
  std::vector<NodeId> solution;
};

JobResult Failed(absl::Status status) {
  JobResult r;
  r.status = std::move(status);
  return r;
}

int ExitCodeFor(const absl::Status& s) {
  switch (s.code()) {
    case absl::StatusCode::kOk:
      return kExitOk;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kFailedPrecondition:
    case absl::StatusCode::kNotFound:
    case absl::StatusCode::kOutOfRange:
      return kExitConfigError;
    default:
      return kExitRuntimeError;
  }
}

absl::Status ConfigError(std::string message) {
  return absl::InvalidArgumentError(std::move(message));
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ElapsedMs() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

absl::StatusOr<InputGraph> LoadInput(const RunConfig& c, std::ostream& err) {
  InputGraph in;
  if (!c.graph_path.empty()) {
    absl::StatusOr<LoadedGraph> loaded = LoadEdgeList(c.graph_path);
    if (!loaded.ok()) return loaded.status();
    if (loaded->self_loops_dropped > 0 || loaded->duplicates_dropped > 0) {
      err << absl::StrFormat(
          "warning: dropped %d self-loops and %d duplicate edges from %s\n",
          loaded->self_loops_dropped, loaded->duplicates_dropped, c.graph_path);
    }
    in.graph = std::move(loaded->graph);
    in.original_ids = std::move(loaded->original_ids);
    in.descriptor = c.graph_path;
    return in;
  }
  absl::StatusOr<GeneratorSpec> spec = GeneratorSpec::Parse(c.generate);
  if (!spec.ok()) return spec.status();
  absl::StatusOr<Graph> g = Generate(*spec);
  if (!g.ok()) return g.status();
  in.graph = *std::move(g);
  in.descriptor = spec->Describe();
  return in;
}

absl::StatusOr<NeighborModel> ParseModel(const std::string& name) {
  if (name == "edge") return NeighborModel::kEdge;
  if (name == "multiset") return NeighborModel::kMultiset;
  return ConfigError(absl::StrCat("unknown privacy model '", name, "'"));
}

absl::StatusOr<int64_t> IntegralTarget(const RunConfig& c) {
  if (!c.target.has_value()) {
    return ConfigError(absl::StrCat(c.command, " needs --target D"));
  }
  const double d = *c.target;
  if (!(d >= 0.0) || d != std::floor(d) || d > 1e15) {
    return ConfigError(absl::StrFormat(
        "--target must be a non-negative integer here, got %g", d));
  }
  return static_cast<int64_t>(d);
}

absl::Status ValidateBudgets(const RunConfig& c) {
  for (double eps : c.epsilons) {
    absl::StatusOr<PrivacyBudget> b =
        PrivacyBudget::Create(eps, c.delta, c.epsilon1);
    if (!b.ok()) return ConfigError(std::string(b.status().message()));
  }
  if (c.trials < 1) return ConfigError("--trials must be at least 1");
  return absl::OkStatus();
}

// Residual max degree and spectral radius, plus SIR spread when requested.
absl::Status FillResidual(const Graph& g, std::span<const NodeId> removed,
                          const RunConfig& c, uint64_t sir_seed,
                          ExperimentRecord& r) {
  absl::StatusOr<NodeMask> mask = RemoveNodes(g, removed);
  if (!mask.ok()) return mask.status();
  r.budget = static_cast<int64_t>(removed.size());
  r.residual_max_degree = MaxDegree(g, *mask);
  absl::StatusOr<double> rho = SpectralRadius(g, *mask);
  if (!rho.ok()) return rho.status();
  r.residual_spectral_radius = *rho;
  if (c.sir_trials > 0) {
    SirConfig cfg;
    cfg.transmission_prob = c.sir_p;
    cfg.num_initial = std::min(c.sir_initial, g.num_nodes());
    cfg.num_trials = c.sir_trials;
    cfg.seed = sir_seed;
    cfg.num_threads = 1;
    absl::StatusOr<SirOutcome> sir = SimulateSir(g, removed, cfg);
    if (!sir.ok()) return sir.status();
    r.mean_sir_spread = sir->mean_final_size;
  }
  return absl::OkStatus();
}

std::string SummaryLine(const ExperimentRecord& r, int32_t trial) {
  std::string line = absl::StrFormat(
      "%s eps=%g trial=%d budget=%d residual_max_degree=%d "
      "residual_spectral_radius=%.6g",
      r.algorithm, r.epsilon, trial, r.budget, r.residual_max_degree,
      r.residual_spectral_radius);
  if (r.mean_sir_spread >= 0.0) {
    absl::StrAppend(
        &line, absl::StrFormat(" mean_sir_spread=%.6g", r.mean_sir_spread));
  }
  return line;
}

// Runs jobs on a pool; results come back in job order.
std::vector<JobResult> RunJobs(size_t count, int32_t threads,
                               const std::function<JobResult(size_t)>& job) {
  std::vector<JobResult> results(count);
  if (count == 0) return results;
  int32_t workers =
      threads > 0 ? threads
                  : static_cast<int32_t>(std::thread::hardware_concurrency());
  workers = std::clamp<int32_t>(workers, 1, static_cast<int32_t>(count));
  std::atomic<size_t> next{0};
  auto loop = [&] {
    for (size_t i = next++; i < count; i = next++) results[i] = job(i);
  };
  {
    std::vector<std::jthread> pool;
    for (int32_t i = 1; i < workers; ++i) pool.emplace_back(loop);
    loop();
  }
  return results;
}

struct SweepJob {
  double epsilon = 0.0;
  int32_t trial = 0;
  uint64_t seed = 0;
};

std::vector<SweepJob> SweepJobs(const RunConfig& c, uint64_t base_seed) {
  std::vector<SweepJob> jobs;
  for (size_t e = 0; e < c.epsilons.size(); ++e) {
    for (int32_t t = 0; t < c.trials; ++t) {
      jobs.push_back({c.epsilons[e], t, SplitSeed(SplitSeed(base_seed, e), t)});
    }
  }
  return jobs;
}

ExperimentRecord BaseRecord(const RunConfig& c, const InputGraph& in,
                            std::string algorithm, double epsilon,
                            double target, uint64_t seed) {
  ExperimentRecord r;
  r.graph = in.descriptor;
  r.algorithm = std::move(algorithm);
  r.epsilon = epsilon;
  r.delta = c.delta;
  r.epsilon1 = c.epsilon1;
  r.target = target;
  r.seed = seed;
  return r;
}

JobResult MaxDegJob(const RunConfig& c, const InputGraph& in, int32_t target,
                    NeighborModel model, const SweepJob& job) {
  JobResult out;
  const Graph& g = in.graph;
  MaxDegTask task{g, target, PrivacyBudget{job.epsilon, c.delta, c.epsilon1},
                  model, c.threshold_constant};
  Rng rng(job.seed);
  const uint64_t sir_seed = SplitSeed(job.seed, 1);
  const bool implicit = c.mode != "explicit";
  const bool explicit_mode = c.mode != "implicit";

  std::optional<ImplicitSolution> permutation;
  if (implicit) {
    Stopwatch timer;
    absl::StatusOr<ImplicitMaxDegResult> res = PrivMaxDegImplicit(task, rng);
    if (!res.ok()) return Failed(res.status());
    const double ms = timer.ElapsedMs();
    ExperimentRecord r =
        BaseRecord(c, in, "privmaxdeg-implicit", job.epsilon, target, job.seed);
    if (c.record_timing) r.wall_time_ms = ms;
    if (absl::Status s = FillResidual(g, res->removed, c, sir_seed, r);
        !s.ok()) {
      return Failed(s);
    }
    out.lines.push_back(SummaryLine(r, job.trial));
    out.records.push_back(std::move(r));
    out.reports.push_back(res->report);
    out.solution = res->removed;
    permutation = std::move(res->solution);
  }
  if (explicit_mode) {
    Stopwatch timer;
    absl::StatusOr<ExplicitSolution> res =
        permutation.has_value()
            ? ExplicitFromPermutation(task, *permutation, rng)
            : PrivMaxDegExplicit(task, rng);
    if (!res.ok()) return Failed(res.status());
    const double ms = timer.ElapsedMs();
    ExperimentRecord r =
        BaseRecord(c, in, "privmaxdeg-explicit", job.epsilon, target, job.seed);
    if (c.record_timing) r.wall_time_ms = ms;
    if (absl::Status s = FillResidual(g, res->nodes, c, sir_seed, r); !s.ok()) {
      return Failed(s);
    }
    out.lines.push_back(absl::StrCat(
        SummaryLine(r, job.trial),
        absl::StrFormat(" k=%d threshold=%.6g", res->k, res->threshold)));
    out.records.push_back(std::move(r));
    out.reports.push_back(res->report);
    out.solution = res->nodes;
  }
  return out;
}

JobResult WalksJob(const RunConfig& c, const InputGraph& in,
                   const SweepJob& job) {
  const Graph& g = in.graph;
  SpectralWalkTask task{g, PrivacyBudget{job.epsilon, c.delta, c.epsilon1},
                        c.target, c.theta};
  Rng rng(job.seed);
  Stopwatch timer;
  absl::StatusOr<WalkHittingResult> res = PrivMinSRWalks(task, rng);
  if (!res.ok()) return Failed(res.status());
  const double ms = timer.ElapsedMs();
  JobResult out;
  ExperimentRecord r = BaseRecord(c, in, "privminsr-walks", job.epsilon,
                                  res->walk_scale, job.seed);
  if (c.record_timing) r.wall_time_ms = ms;
  if (absl::Status s =
          FillResidual(g, res->removed, c, SplitSeed(job.seed, 1), r);
      !s.ok()) {
    return Failed(s);
  }
  out.lines.push_back(
      absl::StrCat(SummaryLine(r, job.trial),
                   absl::StrFormat(" residual_walks4=%d theta=%.6g",
                                   res->residual_walks4, res->theta)));
  out.records.push_back(std::move(r));
  out.reports.push_back(res->report);
  out.solution = res->removed;
  return out;
}

JobResult MultisetJob(const RunConfig& c, const InputGraph& in, int64_t target,
                      NeighborModel model, SpectralMultiplicity multiplicity,
                      const SweepJob& job) {
  const Graph& g = in.graph;
  SpectralCoverTask task{g, target, PrivacyBudget{job.epsilon, c.delta, 0.0},
                         model, multiplicity};
  Rng rng(job.seed);
  Stopwatch timer;
  absl::StatusOr<SpectralCoverResult> res = PrivMinSRMultiset(task, rng);
  if (!res.ok()) return Failed(res.status());
  const double ms = timer.ElapsedMs();
  JobResult out;
  ExperimentRecord r = BaseRecord(c, in, "privminsr-multiset", job.epsilon,
                                  static_cast<double>(target), job.seed);
  if (c.record_timing) r.wall_time_ms = ms;
  if (absl::Status s =
          FillResidual(g, res->removed, c, SplitSeed(job.seed, 1), r);
      !s.ok()) {
    return Failed(s);
  }
  const bool certified =
      res->residual_max_neighbor_degree_sum <= target &&
      res->residual_spectral_radius <= res->certified_bound + 1e-6;
  out.lines.push_back(absl::StrCat(
      SummaryLine(r, job.trial),
      absl::StrFormat(" residual_max_neighbor_degree_sum=%d sqrt_target=%.6g "
                      "certificate=%s",
                      res->residual_max_neighbor_degree_sum,
                      res->certified_bound, certified ? "ok" : "violated")));
  out.records.push_back(std::move(r));
  out.reports.push_back(res->report);
  out.solution = res->removed;
  return out;
}

std::vector<int64_t> ToOriginal(const InputGraph& in,
                                std::span<const NodeId> nodes) {
  std::vector<int64_t> ids;
  ids.reserve(nodes.size());
  for (NodeId v : nodes) {
    ids.push_back(in.original_ids.empty() ? v : in.original_ids[v]);
  }
  return ids;
}

absl::StatusOr<std::vector<NodeId>> ToDense(const InputGraph& in,
                                            std::span<const int64_t> ids) {
  std::vector<NodeId> nodes;
  for (int64_t id : ids) {
    if (in.original_ids.empty()) {
      if (id >= in.graph.num_nodes()) {
        return ConfigError(
            absl::StrFormat("solution node %d is outside the graph (n = %d)",
                            id, in.graph.num_nodes()));
      }
      nodes.push_back(static_cast<NodeId>(id));
      continue;
    }
    auto it =
        std::lower_bound(in.original_ids.begin(), in.original_ids.end(), id);
    if (it == in.original_ids.end() || *it != id) {
      return ConfigError(
          absl::StrFormat("solution node %d does not occur in the graph", id));
    }
    nodes.push_back(static_cast<NodeId>(it - in.original_ids.begin()));
  }
  return nodes;
}

// Summary lines and an unrouted report share stdout only when the CSV goes
// to a file; otherwise stdout carries the CSV alone.
std::ostream& LogStream(const RunConfig& c, std::ostream& out,
                        std::ostream& err) {
  return c.out_path.empty() ? err : out;
}

absl::Status EmitRecords(const RunConfig& c,
                         std::span<const ExperimentRecord> records,
                         std::ostream& out, bool append) {
  if (c.out_path.empty()) {
    out << FormatRecords(records);
    return absl::OkStatus();
  }
  return WriteRecords(records, c.out_path, append);
}

absl::Status EmitReports(const RunConfig& c,
                         std::span<const PrivacyReport> reports,
                         std::ostream& out, std::ostream& err) {
  std::vector<std::string> docs;
  for (const PrivacyReport& r : reports) docs.push_back(r.ToJson());
  const std::string json =
      absl::StrCat("[\n", absl::StrJoin(docs, ",\n"), "\n]\n");
  if (c.report_path.empty()) {
    LogStream(c, out, err) << json;
    return absl::OkStatus();
  }
  return WriteTextFile(c.report_path, json);
}

// Shared tail of the private sweeps: aggregate, then write artifacts.
absl::Status FinishSweep(const RunConfig& c, const InputGraph& in,
                         std::vector<JobResult> results, std::ostream& out,
                         std::ostream& err) {
  std::vector<ExperimentRecord> records;
  std::vector<PrivacyReport> reports;
  for (size_t i = 0; i < results.size(); ++i) {
    JobResult& r = results[i];
    if (!r.status.ok()) return r.status;
    for (const std::string& line : r.lines) {
      LogStream(c, out, err) << line << "\n";
    }
    records.insert(records.end(), r.records.begin(), r.records.end());
    // Reports depend on the budget, not on the trial seed.
    if (i % c.trials == 0) {
      reports.insert(reports.end(), r.reports.begin(), r.reports.end());
    }
  }
  if (!c.solution_out.empty()) {
    const std::vector<int64_t> ids = ToOriginal(in, results.front().solution);
    if (absl::Status s = WriteTextFile(c.solution_out, FormatNodeList(ids));
        !s.ok()) {
      return s;
    }
  }
  if (absl::Status s = EmitReports(c, reports, out, err); !s.ok()) return s;
  return EmitRecords(c, records, out, /*append=*/false);
}

absl::Status CheckSingleRunForSolution(const RunConfig& c) {
  if (!c.solution_out.empty() && (c.epsilons.size() != 1 || c.trials != 1)) {
    return ConfigError(
        "--solution-out needs a single run: pass one --epsilon and --trials 1");
  }
  return absl::OkStatus();
}

absl::Status CmdMaxDeg(const RunConfig& c, uint64_t seed, std::ostream& out,
                       std::ostream& err) {
  if (absl::Status s = ValidateBudgets(c); !s.ok()) return s;
  if (absl::Status s = CheckSingleRunForSolution(c); !s.ok()) return s;
  if (c.mode != "implicit" && !(c.epsilon1 > 0.0)) {
    return absl::FailedPreconditionError(absl::StrCat(
        c.mode,
        " mode needs --epsilon1 > 0 for its sparse-vector stopping "
        "rule"));
  }
  absl::StatusOr<int64_t> target = IntegralTarget(c);
  if (!target.ok()) return target.status();
  if (*target > INT32_MAX) return ConfigError("--target is too large");
  absl::StatusOr<NeighborModel> model = ParseModel(c.privacy_model);
  if (!model.ok()) return model.status();
  absl::StatusOr<InputGraph> in = LoadInput(c, err);
  if (!in.ok()) return in.status();

  const std::vector<SweepJob> jobs = SweepJobs(c, seed);
  std::vector<JobResult> results =
      RunJobs(jobs.size(), c.threads, [&](size_t i) {
        return MaxDegJob(c, *in, static_cast<int32_t>(*target), *model,
                         jobs[i]);
      });
  return FinishSweep(c, *in, std::move(results), out, err);
}

absl::Status CmdSpectral(const RunConfig& c, uint64_t seed, std::ostream& out,
                         std::ostream& err) {
  if (absl::Status s = ValidateBudgets(c); !s.ok()) return s;
  if (absl::Status s = CheckSingleRunForSolution(c); !s.ok()) return s;
  absl::StatusOr<NeighborModel> model = ParseModel(c.privacy_model);
  if (!model.ok()) return model.status();
  const std::vector<SweepJob> jobs = SweepJobs(c, seed);

  if (c.mode == "walks") {
    if (!(c.epsilon1 > 0.0)) {
      return absl::FailedPreconditionError(
          "walks mode needs --epsilon1 > 0 for its sparse-vector stopping "
          "rule");
    }
    if (*model != NeighborModel::kEdge) {
      return ConfigError("walks mode supports only --privacy-model edge");
    }
    if (c.target.has_value() && !(*c.target > 0.0)) {
      return ConfigError("--target (walk scale T) must be positive");
    }
    if (c.theta.has_value() && !(*c.theta >= 0.0)) {
      return ConfigError("--theta must be non-negative");
    }
    absl::StatusOr<InputGraph> in = LoadInput(c, err);
    if (!in.ok()) return in.status();
    std::vector<JobResult> results =
        RunJobs(jobs.size(), c.threads,
                [&](size_t i) { return WalksJob(c, *in, jobs[i]); });
    return FinishSweep(c, *in, std::move(results), out, err);
  }

  absl::StatusOr<int64_t> target = IntegralTarget(c);
  if (!target.ok()) return target.status();
  SpectralMultiplicity multiplicity;
  if (c.multiplicity == "owner") {
    multiplicity = SpectralMultiplicity::kOwnerDegree;
  } else if (c.multiplicity == "neighbor") {
    multiplicity = SpectralMultiplicity::kNeighborDegree;
  } else {
    return ConfigError(
        absl::StrCat("unknown multiplicity '", c.multiplicity, "'"));
  }
  absl::StatusOr<InputGraph> in = LoadInput(c, err);
  if (!in.ok()) return in.status();
  std::vector<JobResult> results =
      RunJobs(jobs.size(), c.threads, [&](size_t i) {
        return MultisetJob(c, *in, *target, *model, multiplicity, jobs[i]);
      });
  return FinishSweep(c, *in, std::move(results), out, err);
}

absl::Status CmdSimulate(const RunConfig& c, uint64_t seed, std::ostream& out,
                         std::ostream& err) {
  if (c.solution_path.empty()) {
    return ConfigError("simulate needs --solution FILE");
  }
  if (c.trials < 1) return ConfigError("--trials must be at least 1");
  if (!(c.sir_p >= 0.0 && c.sir_p <= 1.0)) {
    return ConfigError("--sir-p must lie in [0, 1]");
  }
  if (c.sir_initial < 0) return ConfigError("--sir-initial must be >= 0");
  absl::StatusOr<InputGraph> in = LoadInput(c, err);
  if (!in.ok()) return in.status();
  absl::StatusOr<std::vector<int64_t>> ids = ReadNodeList(c.solution_path);
  if (!ids.ok()) return ids.status();
  absl::StatusOr<std::vector<NodeId>> removed = ToDense(*in, *ids);
  if (!removed.ok()) return removed.status();

  SirConfig cfg;
  cfg.transmission_prob = c.sir_p;
  cfg.num_initial = std::min(c.sir_initial, in->graph.num_nodes());
  cfg.num_trials = c.trials;
  cfg.seed = seed;
  cfg.num_threads = c.threads;
  Stopwatch timer;
  absl::StatusOr<SirOutcome> sir = SimulateSir(in->graph, *removed, cfg);
  if (!sir.ok()) return sir.status();
  const double ms = timer.ElapsedMs();

  ExperimentRecord r = BaseRecord(c, *in, "simulate", 0.0, 0.0, seed);
  r.delta = 0.0;
  r.epsilon1 = 0.0;
  RunConfig no_sir = c;
  no_sir.sir_trials = 0;
  if (absl::Status s = FillResidual(in->graph, *removed, no_sir, 0, r);
      !s.ok()) {
    return s;
  }
  r.mean_sir_spread = sir->mean_final_size;
  if (c.record_timing) r.wall_time_ms = ms;
  LogStream(c, out, err) << absl::StrFormat(
      "simulate removed=%d p=%g initial=%d trials=%d mean_final_size=%.6g "
      "std_final_size=%.6g\n",
      r.budget, cfg.transmission_prob, cfg.num_initial, cfg.num_trials,
      sir->mean_final_size, sir->std_final_size);
  const ExperimentRecord records[] = {r};
  return EmitRecords(c, records, out, /*append=*/true);
}

absl::Status CmdBaseline(const RunConfig& c, uint64_t seed, std::ostream& out,
                         std::ostream& err) {
  if (c.brute_force_limit < 0 || c.brute_force_limit > kBruteForceMax) {
    return ConfigError(absl::StrFormat(
        "--brute-force-limit must lie in [0, %d]", kBruteForceMax));
  }
  std::optional<MultiCoverInstance> inst;
  std::optional<int64_t> target;
  if (c.mode != "walks") {
    absl::StatusOr<int64_t> t = IntegralTarget(c);
    if (!t.ok()) return t.status();
    if (*t > INT32_MAX) return ConfigError("--target is too large");
    target = *t;
  } else if (c.target.has_value() && !(*c.target > 0.0)) {
    return ConfigError("--target (walk scale T) must be positive");
  }
  absl::StatusOr<InputGraph> in = LoadInput(c, err);
  if (!in.ok()) return in.status();
  const Graph& g = in->graph;

  std::vector<ExperimentRecord> records;
  auto add = [&](std::string algorithm, double target_value,
                 std::span<const NodeId> removed,
                 std::string extra) -> absl::Status {
    ExperimentRecord r =
        BaseRecord(c, *in, std::move(algorithm), 0.0, target_value, seed);
    r.delta = 0.0;
    r.epsilon1 = 0.0;
    if (absl::Status s = FillResidual(g, removed, c, SplitSeed(seed, 1), r);
        !s.ok()) {
      return s;
    }
    LogStream(c, out, err) << SummaryLine(r, 0) << extra << "\n";
    records.push_back(std::move(r));
    return absl::OkStatus();
  };

  std::vector<NodeId> last;
  if (c.mode == "walks") {
    const double t =
        c.target.value_or(std::sqrt(static_cast<double>(MaxDegree(g))));
    const double theta = c.theta.value_or(4.0 * g.num_nodes() * std::pow(t, 4));
    last = GreedyWalkHitting(g, theta);
    if (absl::Status s =
            add("greedy-walks", t, last, absl::StrFormat(" theta=%.6g", theta));
        !s.ok()) {
      return s;
    }
  } else {
    inst = c.mode == "multiset"
               ? BuildSpectralInstance(g, *target)
               : BuildMaxDegInstance(g, static_cast<int32_t>(*target));
    const std::string suffix = c.mode == "multiset" ? "multiset" : "maxdeg";
    absl::StatusOr<std::vector<int32_t>> greedy = GreedyCover(*inst);
    if (!greedy.ok()) return greedy.status();
    last.assign(greedy->begin(), greedy->end());
    if (absl::Status s = add("greedy-" + suffix, *target, last, ""); !s.ok()) {
      return s;
    }
    if (g.num_nodes() <= c.brute_force_limit) {
      absl::StatusOr<CoverOptimum> opt = BruteForceOpt(*inst);
      if (!opt.ok()) return opt.status();
      std::vector<NodeId> witness(opt->witness.begin(), opt->witness.end());
      if (absl::Status s = add("brute-force-" + suffix, *target, witness, "");
          !s.ok()) {
        return s;
      }
    }
  }
  if (!c.solution_out.empty()) {
    if (absl::Status s = WriteTextFile(c.solution_out,
                                       FormatNodeList(ToOriginal(*in, last)));
        !s.ok()) {
      return s;
    }
  }
  return EmitRecords(c, records, out, /*append=*/false);
}

void AddGraphSource(CLI::App* cmd, RunConfig& c) {
  CLI::Option* graph =
      cmd->add_option("--graph", c.graph_path, "Edge-list file");
  CLI::Option* gen = cmd->add_option(
      "--generate", c.generate,
      "Generator spec KIND:key=value,... (erdos-renyi, chung-lu-powerlaw, "
      "star, cycle, complete)");
  graph->excludes(gen);
  gen->excludes(graph);
}

void AddCommon(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--seed", c.seed,
                  absl::StrCat("Base seed (default: $", kSeedEnv, " or 0)"));
  cmd->add_option("--out", c.out_path,
                  "CSV output file (default: print to stdout)");
  cmd->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
  cmd->add_flag("--record-timing", c.record_timing,
                "Fill wall_time_ms; makes the CSV nondeterministic");
  cmd->add_option("--sir-p", c.sir_p, "SIR transmission probability");
  cmd->add_option("--sir-initial", c.sir_initial, "SIR initial infectives");
}

void AddPrivate(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--epsilon", c.epsilons,
                  "Privacy epsilon; a comma-separated list sweeps")
      ->delimiter(',');
  cmd->add_option("--delta", c.delta, "Privacy delta in (0, 1)");
  cmd->add_option("--epsilon1", c.epsilon1,
                  "Sparse-vector epsilon for the stopping rule");
  cmd->add_option("--trials", c.trials, "Seeded runs per epsilon");
  cmd->add_option("--report", c.report_path,
                  "Privacy report JSON file (default: print it, on stderr when "
                  "the CSV goes to stdout)");
  cmd->add_option("--privacy-model", c.privacy_model,
                  "Neighbor model: edge or multiset")
      ->check(CLI::IsMember({"edge", "multiset"}));
  cmd->add_option("--solution-out", c.solution_out,
                  "Write the removed nodes, one per line");
  cmd->add_option("--sir-trials", c.sir_trials,
                  "SIR trials on each residual graph (0 = skip)");
}

absl::StatusOr<uint64_t> ResolveSeed(const RunConfig& c) {
  if (c.seed.has_value()) return *c.seed;
  const char* env = std::getenv(kSeedEnv);
  if (env == nullptr || *env == '\0') return uint64_t{0};
  uint64_t seed = 0;
  if (!absl::SimpleAtoi(env, &seed)) {
    return ConfigError(
        absl::StrCat("$", kSeedEnv, " is not an unsigned integer: ", env));
  }
  return seed;
}

}  // namespace

int RunCli(std::span<const std::string> args, std::ostream& out,
           std::ostream& err) {
  RunConfig c;
  CLI::App app{"Private node-removal algorithms for epidemic containment"};
  app.name("privimmune");
  app.require_subcommand(1);

  CLI::App* maxdeg = app.add_subcommand(
      "maxdeg", "Remove nodes privately until the max degree is at most D");
  AddGraphSource(maxdeg, c);
  AddCommon(maxdeg, c);
  AddPrivate(maxdeg, c);
  maxdeg->add_option("--target", c.target, "Degree target D");
  maxdeg->add_option("--mode", c.mode, "implicit, explicit or both")
      ->check(CLI::IsMember({"implicit", "explicit", "both"}));
  maxdeg->add_option("--threshold-constant", c.threshold_constant,
                     "c in the explicit threshold c ln(n) / eps'");

  CLI::App* spectral = app.add_subcommand(
      "spectral", "Remove nodes privately to lower the spectral radius");
  AddGraphSource(spectral, c);
  AddCommon(spectral, c);
  AddPrivate(spectral, c);
  spectral->add_option("--mode", c.mode, "walks or multiset")
      ->check(CLI::IsMember({"walks", "multiset"}));
  spectral->add_option("--target", c.target,
                       "multiset: neighbor-degree-sum target D; walks: walk "
                       "scale T (default sqrt(max degree))");
  spectral->add_option("--theta", c.theta,
                       "walks: W4 threshold (default 4nT^4)");
  spectral
      ->add_option("--multiplicity", c.multiplicity,
                   "multiset: neighbor copies per set, owner or neighbor")
      ->check(CLI::IsMember({"owner", "neighbor"}));

  CLI::App* simulate = app.add_subcommand(
      "simulate", "SIR epidemic on the graph minus a solution node list");
  AddGraphSource(simulate, c);
  AddCommon(simulate, c);
  simulate->add_option("--solution", c.solution_path, "Node list file")
      ->required();
  simulate->add_option("--trials", c.trials, "SIR trials");

  CLI::App* baseline = app.add_subcommand(
      "baseline", "Non-private greedy (and brute force on small graphs)");
  AddGraphSource(baseline, c);
  AddCommon(baseline, c);
  baseline->add_option("--mode", c.mode, "maxdeg, multiset or walks")
      ->check(CLI::IsMember({"maxdeg", "multiset", "walks"}));
  baseline->add_option("--target", c.target, "Target D (or T for walks)");
  baseline->add_option("--theta", c.theta, "walks: W4 threshold");
  baseline->add_option("--brute-force-limit", c.brute_force_limit,
                       "Also compute the optimum when n is at most this");
  baseline->add_option("--solution-out", c.solution_out,
                       "Write the greedy removal set, one per line");
  baseline->add_option("--sir-trials", c.sir_trials,
                       "SIR trials on the residual graph (0 = skip)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  CLI::App* cmd = app.get_subcommands().front();
  c.command = cmd->get_name();
  absl::Status status;
  if (c.graph_path.empty() == c.generate.empty()) {
    status = ConfigError("give exactly one of --graph FILE or --generate SPEC");
  }
  absl::StatusOr<uint64_t> seed = ResolveSeed(c);
  if (status.ok() && !seed.ok()) status = seed.status();
  if (status.ok()) {
    if (c.command == "maxdeg") {
      if (c.mode.empty()) c.mode = "implicit";
      status = CmdMaxDeg(c, *seed, out, err);
    } else if (c.command == "spectral") {
      if (c.mode.empty()) c.mode = "multiset";
      status = CmdSpectral(c, *seed, out, err);
    } else if (c.command == "simulate") {
      if (cmd->count("--trials") == 0) c.trials = 100;
      status = CmdSimulate(c, *seed, out, err);
    } else {
      if (c.mode.empty()) c.mode = "maxdeg";
      status = CmdBaseline(c, *seed, out, err);
    }
  }
  if (!status.ok()) {
    err << "error: " << status.message() << "\n";
    return ExitCodeFor(status);
  }
  return kExitOk;
}

}  // namespace privimmune
