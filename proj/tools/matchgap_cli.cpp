// Command-line harness: generate / verify / emd / experiment / analyze /
// presets.  Every command is deterministic given its flags; primary
// outputs carry no timestamps, so reruns are byte-identical.
//
// Exit codes: 0 = success and all asserted properties hold,
//             1 = a checked property failed,
//             2 = usage, parameter-validation, or IO error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "matchgap/analysis.hpp"
#include "matchgap/construction.hpp"
#include "matchgap/emd.hpp"
#include "matchgap/errors.hpp"
#include "matchgap/estimators.hpp"
#include "matchgap/io.hpp"
#include "matchgap/matching.hpp"
#include "matchgap/oracle.hpp"
#include "matchgap/params.hpp"
#include "matchgap/rng.hpp"
#include "matchgap/sampler.hpp"

namespace {

using namespace matchgap;

constexpr int kOk = 0;
constexpr int kPropertyFailed = 1;
constexpr int kUsage = 2;

struct ParamsSource {
  std::string preset;
  std::string params_file;
  double theory_delta = 0.0;
  std::string xi_convention = "body";
};

void add_params_flags(CLI::App* cmd, ParamsSource& src) {
  cmd->add_option("--preset", src.preset, "named desk preset");
  cmd->add_option("--params", src.params_file, "params-v1 JSON file");
  cmd->add_option("--theory-delta", src.theory_delta,
                  "derive the full-scale parameter chain for this delta");
  cmd->add_option("--xi-convention", src.xi_convention,
                  "xi choice for --theory-delta: body | table")
      ->check(CLI::IsMember({"body", "table"}));
}

Preset resolve_params(const ParamsSource& src) {
  const int given = (!src.preset.empty() ? 1 : 0) +
                    (!src.params_file.empty() ? 1 : 0) +
                    (src.theory_delta != 0.0 ? 1 : 0);
  if (given != 1) {
    throw Error(Errc::kInvalidParam,
                "need exactly one of --preset, --params, --theory-delta");
  }
  if (!src.preset.empty()) return desk_preset(src.preset);
  if (src.theory_delta != 0.0) {
    return theoretical_preset(src.theory_delta,
                              src.xi_convention == "table"
                                  ? XiConvention::kTable
                                  : XiConvention::kBody);
  }
  Preset preset;
  preset.params = params_from_json_text(load_text(src.params_file));
  return preset;
}

// Validates and prints violations; returns false when errors block use.
bool report_violations(const ParamSet& params) {
  const auto violations = validate(params);
  for (const Violation& v : violations) {
    std::cerr << (v.severity == Severity::kError ? "error: " : "warning: ")
              << v.code << ": " << v.message << '\n';
  }
  return !has_errors(violations);
}

std::string instance_base_name(const ParamSet& params, Case c,
                               std::uint64_t seed) {
  const std::string stem = params.name.empty() ? "instance" : params.name;
  return stem + "-" + case_name(c) + "-" + std::to_string(seed);
}

int cmd_generate(const ParamsSource& src, const std::string& case_arg,
                 std::uint64_t seed, const std::string& out_dir) {
  const Preset preset = resolve_params(src);
  if (!report_violations(preset.params)) return kPropertyFailed;
  const Case c = case_from_name(case_arg);
  const Instance instance = build_instance(preset.params, c, seed);
  const MultiGraph sampled = sample_real(instance);

  const std::string base = instance_base_name(preset.params, c, seed);
  save_instance(out_dir, base, instance);
  const std::string edges_path =
      (std::filesystem::path(out_dir) / (base + ".edges.csv")).string();
  save_text(edges_path, edges_csv(sampled, seed, c));

  std::cout << "{\n  \"instance\": \""
            << (std::filesystem::path(out_dir) / (base + ".instance.json"))
                   .string()
            << "\",\n  \"labels\": \""
            << (std::filesystem::path(out_dir) / (base + ".labels.csv"))
                   .string()
            << "\",\n  \"edges\": \"" << edges_path << "\",\n  \"n\": "
            << instance.n << ",\n  \"distinct_pairs\": "
            << sampled.edges.size() << ",\n  \"total_multiplicity\": "
            << sampled.total_multiplicity() << "\n}\n";
  return kOk;
}

int cmd_verify(const ParamsSource& src, const std::string& instance_file,
               const std::string& case_arg, std::uint64_t seed) {
  std::optional<Instance> instance;
  if (!instance_file.empty()) {
    instance = load_instance(instance_file);
  } else {
    const Preset preset = resolve_params(src);
    if (!report_violations(preset.params)) return kPropertyFailed;
    instance = build_instance(preset.params, case_from_name(case_arg), seed);
  }
  const Graph sampled = project_simple(sample_real(*instance));
  const GapReport report = certify_gap(*instance, sampled);
  std::cout << gap_report_json(report);
  return report.separated ? kOk : kPropertyFailed;
}

int cmd_emd(const ParamsSource& src, const std::string& transport_file,
            const std::string& case_arg, std::uint64_t seed,
            std::int64_t max_side) {
  if (!transport_file.empty()) {
    const TransportProblem problem =
        transport_from_json_text(load_text(transport_file));
    const TransportPlan plan = solve_transport(problem);
    std::cout << "{\n  \"total_cost\": {\"num\": \""
              << numerator(plan.total_cost).str() << "\", \"den\": \""
              << denominator(plan.total_cost).str()
              << "\"},\n  \"moves\": " << plan.moves.size() << "\n}\n";
    return kOk;
  }
  const Preset preset = resolve_params(src);
  if (!report_violations(preset.params)) return kPropertyFailed;
  const Case c = case_from_name(case_arg);
  const Instance instance = build_instance(preset.params, c, seed);
  if (instance.n > 2 * max_side) {
    throw Error(Errc::kInvalidParam,
                "instance too large for the exact transport solver; raise "
                "--max-side above " +
                    std::to_string(instance.n / 2) + " to force it");
  }
  const Graph sampled = project_simple(sample_real(instance));
  const std::int64_t mu = hopcroft_karp(sampled, instance.part).size;
  const Rat emd = matching_emd(sampled, instance.part);
  const std::int64_t t = instance.n / 2;
  const bool holds = emd == Rat(2 * t - mu, 2 * t) &&
                     matching_size_from_emd(emd, t) == mu;
  std::cout << "{\n  \"n\": " << instance.n << ",\n  \"part_size\": " << t
            << ",\n  \"mu\": " << mu << ",\n  \"emd\": {\"num\": \""
            << numerator(emd).str() << "\", \"den\": \""
            << denominator(emd).str() << "\"},\n  \"identity_holds\": "
            << (holds ? "true" : "false") << "\n}\n";
  return holds ? kOk : kPropertyFailed;
}

int cmd_experiment(const ParamsSource& src, const std::string& estimator,
                   std::int64_t budget, std::int32_t sample_vertices,
                   std::int64_t trials, const std::string& model_arg,
                   std::uint64_t seed, int jobs, const std::string& out_dir) {
  const Preset preset = resolve_params(src);
  if (!report_violations(preset.params)) return kPropertyFailed;
  EstimatorSpec spec;
  spec.kind = estimator_from_name(estimator);
  spec.budget = budget < 0 ? preset.params.query_budget() : budget;
  spec.sample_vertices = sample_vertices;
  spec.seed = seed;
  const QueryModel model = query_model_from_name(model_arg);

  const ExperimentReport report = distinguishing_experiment(
      preset.params, spec, trials, model, seed, jobs);

  std::cout << experiment_json(report, spec, model, seed, preset.params.name);
  if (!out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    save_text((std::filesystem::path(out_dir) / "experiment.csv").string(),
              experiment_csv(report));
  }
  // Hard budget accounting check across all trials.
  for (const TrialRecord& rec : report.records) {
    if (rec.queries_used > spec.budget) return kPropertyFailed;
  }
  return kOk;
}

int cmd_analyze(const ParamsSource& src, const std::string& transcript_file,
                const std::string& instance_file, int level,
                const std::string& out_dir) {
  const Transcript transcript =
      transcript_from_jsonl_text(load_text(transcript_file));

  std::optional<Instance> instance;
  if (!instance_file.empty()) instance = load_instance(instance_file);
  const ParamSet params =
      instance.has_value() ? instance->params : resolve_params(src).params;

  // Replaying the transcript against the rebuilt instance regenerates
  // the oracle's internal level channel and proves replay consistency.
  std::vector<int> levels;
  const std::vector<int>* levels_ptr = nullptr;
  if (instance.has_value()) {
    Oracle oracle(*instance, transcript.model,
                  static_cast<std::int64_t>(transcript.entries.size()));
    for (const TranscriptEntry& e : transcript.entries) {
      const Answer a = oracle.query(e.u, e.v);
      if (a.pseudo != e.pseudo || a.real != e.real) {
        throw Error(Errc::kFormatError,
                    "transcript does not replay against this instance");
      }
    }
    levels = oracle.internal_levels();
    levels_ptr = &levels;
  }

  const DirectedTranscriptGraph graph = orient(transcript, levels_ptr);
  const DiscoveryStats stats = discovery_stats(transcript, params, levels_ptr);
  const Classification classification =
      classify(graph, params, level,
               instance.has_value() ? &*instance : nullptr);
  std::cout << stats_json(stats, &classification);
  if (!out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    save_text((std::filesystem::path(out_dir) / "shallow_histogram.csv")
                  .string(),
              shallow_histogram_csv(stats));
    save_text((std::filesystem::path(out_dir) / "indegree_histogram.csv")
                  .string(),
              indegree_histogram_csv(graph));
  }
  return kOk;
}

int cmd_probe(const ParamsSource& src, const std::string& case_arg,
              std::uint64_t seed, const std::string& model_arg,
              std::int64_t budget, const std::string& strategy,
              std::uint64_t schedule_seed, const std::string& out_file) {
  const Preset preset = resolve_params(src);
  if (!report_violations(preset.params)) return kPropertyFailed;
  const Instance instance =
      build_instance(preset.params, case_from_name(case_arg), seed);
  const QueryModel model = query_model_from_name(model_arg);
  if (budget < 0) budget = preset.params.query_budget();
  Oracle oracle(instance, model, budget);

  if (strategy == "random") {
    rng::Stream pick(schedule_seed, 0, rng::Tag::kSchedule);
    for (std::int64_t q = 0; q < budget; ++q) {
      const auto u = static_cast<std::int32_t>(
          pick.next_below(static_cast<rng::u64>(instance.n)));
      auto v = static_cast<std::int32_t>(
          pick.next_below(static_cast<rng::u64>(instance.n) - 1));
      if (v >= u) ++v;
      oracle.query(u, v);
    }
  } else if (strategy == "scan") {
    std::int64_t q = 0;
    for (std::int32_t u = 0; u < instance.n && q < budget; ++u) {
      for (std::int32_t v = u + 1; v < instance.n && q < budget; ++v, ++q) {
        oracle.query(u, v);
      }
    }
  } else {
    throw Error(Errc::kInvalidParam,
                "strategy must be 'random' or 'scan', got '" + strategy + "'");
  }

  const std::string text = transcript_jsonl(oracle.transcript());
  if (out_file.empty()) {
    std::cout << text;
  } else {
    save_text(out_file, text);
    std::cout << "{\n  \"transcript\": \"" << out_file
              << "\",\n  \"queries\": " << oracle.steps() << "\n}\n";
  }
  return kOk;
}

int cmd_presets(const ParamsSource& src) {
  if (src.theory_delta != 0.0 || !src.preset.empty() ||
      !src.params_file.empty()) {
    const Preset preset = resolve_params(src);
    for (const Violation& note : preset.notes) {
      std::cerr << "note: " << note.code << ": " << note.message << '\n';
    }
    std::cout << params_json(preset.params);
    return kOk;
  }
  std::cout << "name,n,levels,layers,ground,budget\n";
  for (const std::string& name : desk_preset_names()) {
    const Preset preset = desk_preset(name);
    std::cout << name << ',' << preset.params.n() << ','
              << preset.params.levels << ',' << preset.params.layers << ','
              << preset.params.ground << ',' << preset.params.query_budget()
              << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hard-instance generator and query-budget harness for "
               "matching-size estimation"};
  app.require_subcommand(1);

  ParamsSource src;
  std::string case_arg = "yes";
  std::uint64_t seed = 0;
  std::string gen_out = ".";
  std::string csv_out;
  std::string instance_file;
  std::string transport_file;
  std::string transcript_file;
  std::string estimator = "full-scan";
  std::string model_arg = "strengthened";
  std::int64_t budget = -1;
  std::int32_t sample_vertices = 0;
  std::int64_t trials = 100;
  std::int64_t max_side = 512;
  int jobs = 1;
  int level = 0;

  CLI::App* generate = app.add_subcommand(
      "generate", "build an instance, sample it, write instance-v1 + edges-v1");
  add_params_flags(generate, src);
  generate->add_option("--case", case_arg, "yes | no");
  generate->add_option("--seed", seed, "instance seed");
  generate->add_option("--out", gen_out, "output directory");

  CLI::App* verify = app.add_subcommand(
      "verify", "sample and certify the matching gap of an instance");
  add_params_flags(verify, src);
  verify->add_option("--instance", instance_file, "instance-v1 header file");
  verify->add_option("--case", case_arg, "yes | no");
  verify->add_option("--seed", seed, "instance seed");

  CLI::App* emd = app.add_subcommand(
      "emd", "exact transport distance and the matching identity");
  add_params_flags(emd, src);
  emd->add_option("--transport", transport_file, "transport-v1 JSON file");
  emd->add_option("--case", case_arg, "yes | no");
  emd->add_option("--seed", seed, "instance seed");
  emd->add_option("--max-side", max_side,
                  "largest part size the exact solver will accept");

  CLI::App* experiment = app.add_subcommand(
      "experiment", "coin-flip YES/NO distinguishing trials");
  add_params_flags(experiment, src);
  experiment->add_option("--estimator", estimator,
                         "full-scan | induced-subgraph | random-pairs");
  experiment->add_option("--budget", budget,
                         "query budget per trial (-1 = floor(n^(2-delta)))");
  experiment->add_option("--sample-vertices", sample_vertices,
                         "induced-subgraph sample size (0 = fit budget)");
  experiment->add_option("--trials", trials, "number of trials");
  experiment->add_option("--model", model_arg, "simple | strengthened");
  experiment->add_option("--seed", seed, "experiment seed");
  experiment->add_option("--jobs", jobs, "worker threads");
  experiment->add_option("--out", csv_out, "directory for the per-trial CSV");

  CLI::App* analyze = app.add_subcommand(
      "analyze", "direct a transcript and compute discovery statistics");
  add_params_flags(analyze, src);
  analyze->add_option("--transcript", transcript_file, "transcript JSONL")
      ->required();
  analyze->add_option("--instance", instance_file,
                      "instance-v1 header (enables labels + level channel)");
  analyze->add_option("--level", level,
                      "classification level: 0 = top variant, else 2..L");
  analyze->add_option("--out", csv_out, "directory for histogram CSVs");

  CLI::App* probe = app.add_subcommand(
      "probe", "run a query schedule against the oracle, emit transcript JSONL");
  add_params_flags(probe, src);
  probe->add_option("--case", case_arg, "yes | no");
  probe->add_option("--seed", seed, "instance seed");
  probe->add_option("--model", model_arg, "simple | strengthened");
  probe->add_option("--budget", budget,
                    "queries to spend (-1 = floor(n^(2-delta)))");
  std::string strategy = "random";
  std::uint64_t schedule_seed = 0;
  std::string probe_out;
  probe->add_option("--strategy", strategy, "random | scan");
  probe->add_option("--schedule-seed", schedule_seed,
                    "seed for the random schedule");
  probe->add_option("--out", probe_out, "transcript file (default stdout)");

  CLI::App* presets = app.add_subcommand(
      "presets", "list presets, or print one params-v1 document");
  add_params_flags(presets, src);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (generate->parsed()) {
      return cmd_generate(src, case_arg, seed, gen_out);
    }
    if (verify->parsed()) {
      return cmd_verify(src, instance_file, case_arg, seed);
    }
    if (emd->parsed()) {
      return cmd_emd(src, transport_file, case_arg, seed, max_side);
    }
    if (experiment->parsed()) {
      return cmd_experiment(src, estimator, budget, sample_vertices, trials,
                            model_arg, seed, jobs, csv_out);
    }
    if (analyze->parsed()) {
      return cmd_analyze(src, transcript_file, instance_file, level, csv_out);
    }
    if (probe->parsed()) {
      return cmd_probe(src, case_arg, seed, model_arg, budget, strategy,
                       schedule_seed, probe_out);
    }
    if (presets->parsed()) {
      return cmd_presets(src);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.code()) {
      case Errc::kIoError:
      case Errc::kFormatError:
      case Errc::kUnknownPreset:
      case Errc::kUnknownEstimator:
      case Errc::kInvalidParam:
        return kUsage;
      default:
        return kPropertyFailed;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
