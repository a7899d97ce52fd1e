#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "bbnet/network.hpp"

namespace bbnet {

enum class TopologyKind { ring, tree, star, bus, mesh };

const char* to_string(TopologyKind k);
TopologyKind topology_kind_from_string(std::string_view s); // throws std::invalid_argument

struct TopologySpec {
    TopologyKind kind = TopologyKind::ring;
    int container_count = 2;
    int facts_per_container = 0;
    int rule_count = 0;
    double guard_fraction = 0.0; // share of non-ingress containers given guards
    std::uint64_t seed = 0;
};

// Deterministic network generator: equal specs (including seed) produce
// structurally equal networks. Link structure per kind: ring = single cycle,
// tree = random tree, star = hub and spokes, bus = path, mesh = complete
// graph. Facts start false; rules are sampled with footprints along existing
// links; guarded containers always get an unlocking rule.
Network generate_topology(const TopologySpec& spec);

// The six-container worked example: two rule-chains (via containers 2 and 4)
// that unlock container 5's fact and, from there, the egress fact.
Network build_worked_example();

struct ExperimentRow {
    TopologyKind kind = TopologyKind::ring;
    int link_cap = 0;
    int trials = 0;
    double avg_reality_paths = 0.0;
    double avg_variants = 0.0;
    double avg_runtime_seconds = 0.0;
    bool stopped_early = false;
};

// Runs `trials` traversals per link cap and averages the counts. Counts are
// identical across trials (the engine is deterministic); runtimes vary.
// A row is marked stopped_early when a trial hit the time limit, and its
// runtime then reports the configured limit.
std::vector<ExperimentRow> run_experiment(const TopologySpec& spec,
                                          const std::vector<int>& link_caps, int trials,
                                          double time_limit_seconds);

// CSV report; header is fixed:
// topology,link_cap,trials,avg_reality_paths,avg_variants,avg_runtime_seconds,stopped_early
void write_report(const std::vector<ExperimentRow>& rows, std::ostream& out);
void write_report(const std::vector<ExperimentRow>& rows, const std::string& destination);

} // namespace bbnet
