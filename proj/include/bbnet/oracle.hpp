#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bbnet/network.hpp"
#include "bbnet/traversal.hpp"

namespace bbnet {

// Ground-truth enumerator. Tracks the complete (location, global fact
// assignment) state instead of per-path variants and shares no evaluation
// machinery with the engine. Must stay naive; do not optimize.

struct GlobalState {
    std::uint32_t location = 0;
    std::vector<bool> assignment; // by fact index, covers every fact
};

struct OracleStep {
    std::string container;
    std::string link; // empty for the initial ingress entry
    std::string rule; // empty when the move ran no rule
};

struct OraclePath {
    std::vector<OracleStep> steps;
};

// Exhaustive depth-first enumeration of every egress-reaching path under the
// engine's semantics (one rule per move, guards, link caps, in-path state
// dedup, stop on first egress arrival). Clones the full assignment at every
// branch. Throws std::domain_error beyond 6 containers or 8 facts.
std::vector<OraclePath> enumerate_paths_bruteforce(const Network& net, const TraversalConfig& cfg);

struct DiffReport {
    std::vector<std::string> missing; // canonical paths the engine lacks
    std::vector<std::string> extra;   // canonical paths only the engine found
    bool empty() const { return missing.empty() && extra.empty(); }
};

std::string canonical_sequence(const OraclePath& path);

// Compares both sides as multisets of (container, rule-or-none) sequences.
DiffReport diff_results(const TraversalResult& engine, const std::vector<OraclePath>& oracle,
                        const Network& net);

} // namespace bbnet
