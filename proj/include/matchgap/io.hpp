#ifndef MATCHGAP_IO_HPP
#define MATCHGAP_IO_HPP

#include <cstdint>
#include <string>

#include "matchgap/analysis.hpp"
#include "matchgap/construction.hpp"
#include "matchgap/emd.hpp"
#include "matchgap/estimators.hpp"
#include "matchgap/graph.hpp"
#include "matchgap/matching.hpp"
#include "matchgap/oracle.hpp"
#include "matchgap/params.hpp"

// Serialization of every artifact the harness reads or writes.  All
// emitters are deterministic (sorted keys, fixed field order, no
// timestamps): rerunning a command must reproduce its outputs byte for
// byte.  Rationals travel as {"num": "...", "den": "..."} decimal
// strings so arbitrary precision survives the trip.
namespace matchgap {

// --- generic file helpers (throw kIoError) --------------------------------
void save_text(const std::string& path, const std::string& text);
std::string load_text(const std::string& path);

// --- parameter sets: schema "params-v1" -----------------------------------
std::string params_json(const ParamSet& params);
ParamSet params_from_json_text(const std::string& text);

// --- instances: schema "instance-v1" ---------------------------------------
// Header JSON (params, case, seed, set-size table, label file name) plus
// a flat per-(vertex, level) label CSV.  Gadgets are a pure function of
// the header, so they are not stored.
std::string instance_header_json(const Instance& instance,
                                 const std::string& labels_name);
std::string instance_labels_csv(const Instance& instance);

// Writes <dir>/<base>.instance.json and <dir>/<base>.labels.csv.
void save_instance(const std::string& dir, const std::string& base,
                   const Instance& instance);

// Rebuilds the instance from the header's (params, case, seed) and
// cross-checks every row of the label CSV against the rebuilt frames;
// kFormatError on any disagreement.
Instance load_instance(const std::string& header_path);

// --- sampled graphs: schema "edges-v1" -------------------------------------
// First line "edges-v1,n=...,seed=...,case_hash=...", then a column
// header and sorted rows.  The case enters only hashed, so the file does
// not leak the hidden bit; anyone holding (seed, case) can verify it.
std::uint64_t case_hash(std::uint64_t seed, Case c);
std::string edges_csv(const MultiGraph& mg, std::uint64_t seed, Case c);
std::string edges_csv(const Graph& g, std::uint64_t seed, Case c);
MultiGraph edges_from_csv_text(const std::string& text);  // count column optional

// --- transcripts: JSONL, header line then one line per query ---------------
std::string transcript_jsonl(const Transcript& transcript);
Transcript transcript_from_jsonl_text(const std::string& text);

// --- reports ---------------------------------------------------------------
std::string gap_report_json(const GapReport& report);

// schema "transport-v1": explicit cost matrix, or the matching family
// as an inline graph (part labels + edge list) rebuilt on load.
std::string transport_json(const TransportProblem& problem);
std::string transport_json_matching(const Graph& g,
                                    const std::vector<std::uint8_t>& part);
TransportProblem transport_from_json_text(const std::string& text);

std::string experiment_json(const ExperimentReport& report,
                            const EstimatorSpec& spec, QueryModel model,
                            std::uint64_t seed, const std::string& params_name);
std::string experiment_csv(const ExperimentReport& report);

std::string stats_json(const DiscoveryStats& stats,
                       const Classification* classification = nullptr);
std::string shallow_histogram_csv(const DiscoveryStats& stats);
std::string indegree_histogram_csv(const DirectedTranscriptGraph& g);

}  // namespace matchgap

#endif  // MATCHGAP_IO_HPP
