#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bbnet/network.hpp"

namespace bbnet {

struct TraversalConfig {
    int link_cap = 1;                        // max traversals of one link per path
    std::optional<long long> node_cap;       // max total path expansions
    std::optional<double> time_limit_seconds;
};

enum class PathStatus { active, terminated, reached_egress };
enum class Termination { exhausted, node_cap, time_limit };

const char* to_string(Termination t);

// A rule with fact references resolved to indices, ready for evaluation.
struct CompiledRule {
    std::string id;
    struct Cond {
        std::uint32_t fact;
        bool value;
    };
    std::vector<Cond> pre;
    std::vector<Cond> post;
    std::vector<std::uint32_t> footprint; // owning containers, sorted unique
};

std::vector<CompiledRule> compile_rules(const Network& net, const std::vector<RuleDef>& defs);

// Declared rules plus instantiated generic rules, in document order.
std::vector<CompiledRule> concrete_rules(const Network& net);

// A path-private clone of one container's fact state.
struct Variant {
    std::uint32_t container = 0;
    std::vector<bool> values; // aligned with the container's fact slots
    std::size_t created_at_step = 0;
};

struct ChangedFact {
    std::uint32_t fact = 0;
    bool value = false;
};

struct Transition {
    std::uint32_t to = 0;
    std::optional<std::uint32_t> via_link;     // none only for the ingress entry
    std::optional<std::uint32_t> applied_rule; // index into the concrete rule list
    std::vector<std::uint32_t> resulting_variants; // indices into the path's variants
    std::vector<ChangedFact> changed_facts;
};

// One candidate route through the network. Owns its transitions, variants and
// fact view outright; copying a path copies everything, so no state is ever
// shared between paths.
class RealityPath {
public:
    static RealityPath seed(const Network& net);

    const std::vector<Transition>& transitions() const { return transitions_; }
    const std::vector<Variant>& variants() const { return variants_; }
    PathStatus status() const { return status_; }
    void set_status(PathStatus s) { status_ = s; }

    std::uint32_t head() const { return transitions_.back().to; }
    int link_usage(std::uint32_t link) const { return link_usage_[link]; }

    // Value of a fact under this path's view: the owner's latest variant when
    // one exists, the base network otherwise.
    bool resolve(const Network& net, std::uint32_t fact) const;

    // Full fact assignment under this path's view, indexed by fact.
    const std::vector<bool>& global_state() const { return global_state_; }

    // (container, global state) at transition `step`.
    std::uint32_t state_container(std::size_t step) const { return transitions_[step].to; }
    const std::vector<bool>& state_assignment(std::size_t step) const { return history_[step]; }

    // Applies one rule's postconditions to this path's view, creating or
    // reusing variants per container. Returns the variant indices now current
    // for the touched containers plus the fact-level diff.
    struct Applied {
        std::vector<std::uint32_t> variants;
        std::vector<ChangedFact> changed;
        std::size_t new_variant_count = 0;
    };
    Applied apply(const Network& net, const CompiledRule& rule);

    // Records the move onto `to`; `applied` carries the effect of the rule
    // run together with this move, if any.
    void push_move(std::uint32_t to, std::uint32_t via_link,
                   std::optional<std::uint32_t> rule, Applied applied);

    // True when (container, assignment) already occurred at some transition.
    bool state_seen(std::uint32_t container, const std::vector<bool>& assignment) const;

private:
    std::vector<Transition> transitions_;
    std::vector<Variant> variants_;
    std::unordered_map<std::uint32_t, std::uint32_t> current_view_; // container -> variant index
    std::vector<int> link_usage_;      // by link index
    std::vector<bool> global_state_;   // by fact index
    std::vector<std::vector<bool>> history_; // global state after each transition
    PathStatus status_ = PathStatus::active;
};

struct TraversalResult {
    std::vector<RealityPath> attack_paths;
    long long total_paths_generated = 0;
    long long total_variants_created = 0;
    long long expansions = 0;
    double runtime_seconds = 0.0;
    Termination termination = Termination::exhausted;
    std::vector<CompiledRule> rules; // the concrete rule list the run used
};

// Single-fact lookup by id under the path's view. Throws on unknown ids.
bool resolve_fact(const RealityPath& path, const Network& net, std::string_view fact_id);

// True iff the rule's footprint lies within {current, adjacent} and every
// precondition holds under the path's view.
bool rule_applicable(const RealityPath& path, const Network& net, const CompiledRule& rule,
                     std::uint32_t current, std::uint32_t adjacent);

bool guard_holds(const RealityPath& path, const Network& net, std::uint32_t container);

// All child paths of an active path: per traversable link under the cap, one
// rule-free move plus one move per applicable rule, minus candidates whose
// (container, fact state) already occurred on this path.
std::vector<RealityPath> generate_children(const RealityPath& path, const Network& net,
                                           const std::vector<CompiledRule>& rules,
                                           const TraversalConfig& cfg);

// Breadth-first enumeration of reality paths from ingress to egress.
// Paths reaching the egress are recorded and not expanded further.
TraversalResult traverse(const Network& net, const TraversalConfig& cfg);

// "container|rule;container|rule;..." for one path, used for result
// comparison and determinism checks.
std::string canonical_sequence(const RealityPath& path, const Network& net,
                               const std::vector<CompiledRule>& rules);

} // namespace bbnet
