#include "matchgap/io.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "matchgap/errors.hpp"
#include "matchgap/rng.hpp"

namespace matchgap {

namespace {

using nlohmann::json;

json rat_to_json(const Rat& value) {
  return json{{"num", numerator(value).str()},
              {"den", denominator(value).str()}};
}

Rat rat_from_json(const json& j) {
  return Rat(BigInt(j.at("num").get<std::string>()),
             BigInt(j.at("den").get<std::string>()));
}

json rat_vector_to_json(const std::vector<Rat>& values) {
  json out = json::array();
  for (const Rat& v : values) out.push_back(rat_to_json(v));
  return out;
}

std::vector<Rat> rat_vector_from_json(const json& j) {
  std::vector<Rat> out;
  for (const json& item : j) out.push_back(rat_from_json(item));
  return out;
}

json parse_or_throw(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw Error(Errc::kFormatError,
                std::string(what) + ": malformed JSON document");
  }
  return j;
}

void expect_schema(const json& j, const char* schema) {
  if (!j.is_object() || j.value("schema", "") != schema) {
    throw Error(Errc::kFormatError,
                std::string("expected schema '") + schema + "'");
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

json params_to_json_obj(const ParamSet& p) {
  json j;
  j["schema"] = "params-v1";
  j["name"] = p.name;
  j["delta"] = p.delta;
  j["levels"] = p.levels;
  j["layers"] = p.layers;
  j["zeta"] = rat_to_json(p.zeta);
  j["xi"] = rat_to_json(p.xi);
  j["gamma"] = rat_to_json(p.gamma);
  j["sigma"] = p.sigma;
  j["dense"] = p.dense;
  j["sparse"] = p.sparse;
  j["rho_level"] = p.rho_level;
  j["rho"] = p.rho;
  j["ground"] = p.ground;
  j["set_size"] = rat_vector_to_json(p.set_size);
  j["level_size"] = rat_vector_to_json(p.level_size);
  j["padding"] = p.padding;
  j["epsilon"] = p.epsilon;
  return j;
}

ParamSet params_from_json_obj(const json& j) {
  expect_schema(j, "params-v1");
  ParamSet p;
  p.name = j.at("name").get<std::string>();
  p.delta = j.at("delta").get<double>();
  p.levels = j.at("levels").get<int>();
  p.layers = j.at("layers").get<std::int64_t>();
  p.zeta = rat_from_json(j.at("zeta"));
  p.xi = rat_from_json(j.at("xi"));
  p.gamma = rat_from_json(j.at("gamma"));
  p.sigma = j.at("sigma").get<std::vector<double>>();
  p.dense = j.at("dense").get<std::vector<double>>();
  p.sparse = j.at("sparse").get<double>();
  p.rho_level = j.at("rho_level").get<std::vector<double>>();
  p.rho = j.at("rho").get<double>();
  p.ground = j.at("ground").get<std::int64_t>();
  p.set_size = rat_vector_from_json(j.at("set_size"));
  p.level_size = rat_vector_from_json(j.at("level_size"));
  p.padding = j.at("padding").get<std::int64_t>();
  p.epsilon = j.at("epsilon").get<double>();
  return p;
}

}  // namespace

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::kIoError, "cannot open for writing: " + path);
  out << text;
  if (!out) throw Error(Errc::kIoError, "write failed: " + path);
}

std::string load_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIoError, "cannot open for reading: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(Errc::kIoError, "read failed: " + path);
  return buffer.str();
}

std::string params_json(const ParamSet& params) {
  return params_to_json_obj(params).dump(2) + "\n";
}

ParamSet params_from_json_text(const std::string& text) {
  try {
    return params_from_json_obj(parse_or_throw(text, "params"));
  } catch (const json::exception& e) {
    throw Error(Errc::kFormatError, std::string("params: ") + e.what());
  }
}

std::string instance_header_json(const Instance& instance,
                                 const std::string& labels_name) {
  json j;
  j["schema"] = "instance-v1";
  j["params"] = params_to_json_obj(instance.params);
  j["case"] = case_name(instance.instance_case);
  j["seed"] = instance.seed;
  j["n"] = instance.n;
  json sizes = json::array();
  for (int ell = 1; ell <= instance.params.levels; ++ell) {
    sizes.push_back(json{{"level", ell},
                         {"set_size", instance.params.set_size_at(ell)},
                         {"level_size", instance.params.level_size_at(ell)}});
  }
  j["set_sizes"] = sizes;
  j["labels"] = labels_name;
  return j.dump(2) + "\n";
}

std::string instance_labels_csv(const Instance& instance) {
  std::ostringstream out;
  out << "vertex,level,kind,side,layer,slice,part\n";
  for (std::int32_t v = 0; v < instance.n; ++v) {
    for (int ell = instance.params.levels; ell >= 1; --ell) {
      const Frame& f = instance.frame(v, ell);
      out << v << ',' << ell << ',' << set_kind_letter(f.kind) << ','
          << static_cast<int>(f.side) << ',' << f.layer << ',' << f.slice
          << ',' << static_cast<int>(instance.part[static_cast<std::size_t>(v)])
          << '\n';
    }
  }
  return out.str();
}

void save_instance(const std::string& dir, const std::string& base,
                   const Instance& instance) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  const std::string labels_name = base + ".labels.csv";
  save_text((fs::path(dir) / (base + ".instance.json")).string(),
            instance_header_json(instance, labels_name));
  save_text((fs::path(dir) / labels_name).string(),
            instance_labels_csv(instance));
}

Instance load_instance(const std::string& header_path) {
  json j;
  std::string labels_name;
  ParamSet params;
  Case c = Case::kYes;
  std::uint64_t seed = 0;
  std::int64_t n = 0;
  try {
    j = parse_or_throw(load_text(header_path), "instance header");
    expect_schema(j, "instance-v1");
    params = params_from_json_obj(j.at("params"));
    c = case_from_name(j.at("case").get<std::string>());
    seed = j.at("seed").get<std::uint64_t>();
    n = j.at("n").get<std::int64_t>();
    labels_name = j.at("labels").get<std::string>();
  } catch (const json::exception& e) {
    throw Error(Errc::kFormatError,
                std::string("instance header: ") + e.what());
  }

  Instance instance = build_instance(params, c, seed);
  if (instance.n != n) {
    throw Error(Errc::kFormatError,
                "instance header n does not match the rebuilt instance");
  }

  const std::string labels_path =
      (std::filesystem::path(header_path).parent_path() / labels_name)
          .string();
  const std::string expected = instance_labels_csv(instance);
  const std::string actual = load_text(labels_path);
  if (expected != actual) {
    throw Error(Errc::kFormatError,
                "label table disagrees with the rebuilt instance: " +
                    labels_path);
  }
  return instance;
}

std::uint64_t case_hash(std::uint64_t seed, Case c) {
  return rng::mix(rng::mix(seed, 0x65646765u),
                  c == Case::kYes ? 1u : 2u);
}

namespace {

std::string edges_header(std::int32_t n, std::uint64_t seed, Case c) {
  std::ostringstream out;
  out << "edges-v1,n=" << n << ",seed=" << seed << ",case_hash="
      << std::hex << case_hash(seed, c) << std::dec << '\n';
  return out.str();
}

}  // namespace

std::string edges_csv(const MultiGraph& mg, std::uint64_t seed, Case c) {
  std::ostringstream out;
  out << edges_header(mg.n, seed, c) << "u,v,count\n";
  for (const MultiEdge& e : mg.edges) {
    out << e.u << ',' << e.v << ',' << e.count << '\n';
  }
  return out.str();
}

std::string edges_csv(const Graph& g, std::uint64_t seed, Case c) {
  std::ostringstream out;
  out << edges_header(g.n, seed, c) << "u,v\n";
  for (std::int32_t u = 0; u < g.n; ++u) {
    for (std::int32_t v : g.adj[static_cast<std::size_t>(u)]) {
      if (u < v) out << u << ',' << v << '\n';
    }
  }
  return out.str();
}

MultiGraph edges_from_csv_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("edges-v1,", 0) != 0) {
    throw Error(Errc::kFormatError, "edges file missing edges-v1 header");
  }
  MultiGraph mg;
  for (const std::string& field : split_csv_line(line)) {
    if (field.rfind("n=", 0) == 0) {
      mg.n = static_cast<std::int32_t>(std::stoll(field.substr(2)));
    }
  }
  if (!std::getline(in, line) || (line != "u,v,count" && line != "u,v")) {
    throw Error(Errc::kFormatError, "edges file missing column header");
  }
  const bool has_count = line == "u,v,count";
  try {
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto fields = split_csv_line(line);
      if (fields.size() != (has_count ? 3u : 2u)) {
        throw Error(Errc::kFormatError, "edges row arity mismatch: " + line);
      }
      MultiEdge e;
      e.u = static_cast<std::int32_t>(std::stoll(fields[0]));
      e.v = static_cast<std::int32_t>(std::stoll(fields[1]));
      e.count = has_count ? std::stoll(fields[2]) : 1;
      mg.edges.push_back(e);
    }
  } catch (const std::logic_error&) {
    throw Error(Errc::kFormatError, "edges row holds a non-numeric field");
  }
  return mg;
}

std::string transcript_jsonl(const Transcript& transcript) {
  std::ostringstream out;
  json header;
  header["schema"] = "transcript-v1";
  header["model"] = query_model_name(transcript.model);
  header["seed"] = transcript.seed;
  header["n"] = transcript.n;
  header["budget"] = transcript.budget;
  out << header.dump() << '\n';
  for (const TranscriptEntry& e : transcript.entries) {
    json row;
    row["step"] = e.step;
    row["u"] = e.u;
    row["v"] = e.v;
    row["pseudo"] = e.pseudo;
    row["real"] = e.real;
    out << row.dump() << '\n';
  }
  return out.str();
}

Transcript transcript_from_jsonl_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(Errc::kFormatError, "empty transcript file");
  }
  Transcript t;
  try {
    const json header = parse_or_throw(line, "transcript header");
    expect_schema(header, "transcript-v1");
    t.model = query_model_from_name(header.at("model").get<std::string>());
    t.seed = header.at("seed").get<std::uint64_t>();
    t.n = header.at("n").get<std::int32_t>();
    t.budget = header.at("budget").get<std::int64_t>();
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const json row = parse_or_throw(line, "transcript row");
      TranscriptEntry e;
      e.step = row.at("step").get<std::int64_t>();
      e.u = row.at("u").get<std::int32_t>();
      e.v = row.at("v").get<std::int32_t>();
      e.pseudo = row.at("pseudo").get<std::int64_t>();
      e.real = row.at("real").get<std::int64_t>();
      t.entries.push_back(e);
    }
  } catch (const json::exception& e) {
    throw Error(Errc::kFormatError, std::string("transcript: ") + e.what());
  }
  return t;
}

std::string gap_report_json(const GapReport& report) {
  json j;
  j["schema"] = "gap-report-v1";
  j["case"] = case_name(report.instance_case);
  j["n"] = report.n;
  j["mu"] = report.mu;
  j["half_n"] = report.half;
  j["deficiency"] = report.half - report.mu;
  j["gap_floor"] = report.gap_floor;
  j["cover_size"] = report.cover_size;
  j["cover_valid"] = report.cover_valid;
  j["certified_max"] = report.certified_max;
  j["separated"] = report.separated;
  json blocks = json::array();
  for (const BlockMatchingReport& b : report.blocks) {
    blocks.push_back(json{{"block", b.block},
                          {"level", b.level},
                          {"x_size", b.x_size},
                          {"y_size", b.y_size},
                          {"matched", b.matched},
                          {"perfect", b.perfect}});
  }
  j["block_matchings"] = blocks;
  return j.dump(2) + "\n";
}

std::string transport_json(const TransportProblem& problem) {
  json j;
  j["schema"] = "transport-v1";
  j["supply"] = rat_vector_to_json(problem.supply);
  j["demand"] = rat_vector_to_json(problem.demand);
  json cost = json::array();
  for (const auto& row : problem.cost) cost.push_back(rat_vector_to_json(row));
  j["cost"] = cost;
  return j.dump(2) + "\n";
}

std::string transport_json_matching(const Graph& g,
                                    const std::vector<std::uint8_t>& part) {
  json j;
  j["schema"] = "transport-v1";
  j["family"] = "matching";
  j["n"] = g.n;
  json parts = json::array();
  for (std::uint8_t p : part) parts.push_back(static_cast<int>(p));
  j["part"] = parts;
  json edges = json::array();
  for (std::int32_t u = 0; u < g.n; ++u) {
    for (std::int32_t v : g.adj[static_cast<std::size_t>(u)]) {
      if (u < v) edges.push_back(json::array({u, v}));
    }
  }
  j["edges"] = edges;
  return j.dump(2) + "\n";
}

TransportProblem transport_from_json_text(const std::string& text) {
  try {
    const json j = parse_or_throw(text, "transport");
    expect_schema(j, "transport-v1");
    if (j.value("family", "") == "matching") {
      const auto n = j.at("n").get<std::int32_t>();
      Graph g(n);
      std::vector<std::uint8_t> part;
      for (const json& p : j.at("part")) {
        part.push_back(static_cast<std::uint8_t>(p.get<int>()));
      }
      if (part.size() != static_cast<std::size_t>(n)) {
        throw Error(Errc::kFormatError, "part table size mismatch");
      }
      for (const json& e : j.at("edges")) {
        g.add_edge(e.at(0).get<std::int32_t>(), e.at(1).get<std::int32_t>());
      }
      g.sort_adjacency();
      return matching_transport_problem(g, part);
    }
    TransportProblem problem;
    problem.supply = rat_vector_from_json(j.at("supply"));
    problem.demand = rat_vector_from_json(j.at("demand"));
    for (const json& row : j.at("cost")) {
      problem.cost.push_back(rat_vector_from_json(row));
    }
    return problem;
  } catch (const json::exception& e) {
    throw Error(Errc::kFormatError, std::string("transport: ") + e.what());
  }
}

std::string experiment_json(const ExperimentReport& report,
                            const EstimatorSpec& spec, QueryModel model,
                            std::uint64_t seed,
                            const std::string& params_name) {
  json j;
  j["schema"] = "experiment-v1";
  j["params"] = params_name;
  j["estimator"] = estimator_name(spec.kind);
  j["budget"] = spec.budget;
  j["sample_vertices"] = spec.sample_vertices;
  j["model"] = query_model_name(model);
  j["seed"] = seed;
  j["trials"] = report.trials;
  j["correct"] = report.correct;
  j["success_rate"] = report.success_rate;
  j["wilson_lo"] = report.wilson_lo;
  j["wilson_hi"] = report.wilson_hi;
  j["threshold"] = report.threshold;
  return j.dump(2) + "\n";
}

std::string experiment_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "index,case,instance_seed,estimate,decided_yes,correct,"
         "queries_used,truncated\n";
  for (const TrialRecord& r : report.records) {
    out << r.index << ',' << case_name(r.actual) << ',' << r.instance_seed
        << ',' << r.estimate << ',' << (r.decided_yes ? 1 : 0) << ','
        << (r.correct ? 1 : 0) << ',' << r.queries_used << ','
        << (r.truncated ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string stats_json(const DiscoveryStats& stats,
                       const Classification* classification) {
  json j;
  j["schema"] = "analysis-v1";
  j["queries"] = stats.queries;
  j["edges_found"] = stats.edges_found;
  j["inner_edges_found"] = stats.inner_edges_found;
  j["real_edges_found"] = stats.real_edges_found;
  j["max_indegree"] = stats.max_indegree;
  j["depth_cap"] = stats.depth_cap;
  if (classification != nullptr) {
    std::int64_t spoilers = 0;
    std::int64_t spoiled = 0;
    for (std::uint8_t s : classification->spoiler) spoilers += s;
    for (std::uint8_t s : classification->spoiled) spoiled += s;
    j["classification"] = json{
        {"level", classification->level},
        {"vertex_threshold", classification->vertex_threshold},
        {"neighbor_threshold", classification->neighbor_threshold},
        {"spoilers", spoilers},
        {"spoiled_vertices", spoiled},
        {"spoiled_edges",
         static_cast<std::int64_t>(classification->spoiled_edges.size())}};
  }
  return j.dump(2) + "\n";
}

std::string shallow_histogram_csv(const DiscoveryStats& stats) {
  std::ostringstream out;
  out << "shallow_size,vertices\n";
  for (const auto& [size, count] : stats.shallow_size_histogram) {
    out << size << ',' << count << '\n';
  }
  return out.str();
}

std::string indegree_histogram_csv(const DirectedTranscriptGraph& g) {
  std::map<std::int32_t, std::int64_t> histogram;
  for (std::int32_t v = 0; v < g.n; ++v) {
    if (g.first_seen[static_cast<std::size_t>(v)] < 0) continue;
    ++histogram[g.indegree[static_cast<std::size_t>(v)]];
  }
  std::ostringstream out;
  out << "indegree,vertices\n";
  for (const auto& [indegree, count] : histogram) {
    out << indegree << ',' << count << '\n';
  }
  return out.str();
}

}  // namespace matchgap
