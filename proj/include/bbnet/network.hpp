#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace bbnet {

// Thrown when a network document cannot be parsed at all.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown when a structurally parsed network violates model invariants.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Definition structs: the document-order view of a network, as loaded from or
// written to a network file. Plain data, order-preserving, comparable.
// ---------------------------------------------------------------------------

struct FactDef {
    std::string id;
    std::string name;
    bool value = false;
    std::string common_property; // empty: no common property

    friend bool operator==(const FactDef&, const FactDef&) = default;
};

struct GuardTermDef {
    std::string fact;
    bool value = true;

    friend bool operator==(const GuardTermDef&, const GuardTermDef&) = default;
};

struct ContainerDef {
    std::string id;
    std::string name;
    std::vector<FactDef> facts;
    std::vector<GuardTermDef> guard; // empty: always traversable

    friend bool operator==(const ContainerDef&, const ContainerDef&) = default;
};

struct LinkDef {
    std::string id;
    std::string a;
    std::string b;
    bool bidirectional = true;

    friend bool operator==(const LinkDef&, const LinkDef&) = default;
};

struct ConditionDef {
    std::string fact;
    bool value = true;

    friend bool operator==(const ConditionDef&, const ConditionDef&) = default;
};

struct RuleDef {
    std::string id;
    std::vector<ConditionDef> pre;
    std::vector<ConditionDef> post;

    friend bool operator==(const RuleDef&, const RuleDef&) = default;
};

enum class Role { source, target };

struct GenericConditionDef {
    Role role = Role::source;
    std::string property;
    bool value = true;

    friend bool operator==(const GenericConditionDef&, const GenericConditionDef&) = default;
};

struct GenericRuleDef {
    std::string id;
    std::vector<GenericConditionDef> pre;
    std::vector<GenericConditionDef> post;

    friend bool operator==(const GenericRuleDef&, const GenericRuleDef&) = default;
};

struct NetworkDef {
    std::vector<ContainerDef> containers;
    std::vector<LinkDef> links;
    std::vector<RuleDef> rules;
    std::vector<GenericRuleDef> generic_rules;
    std::string ingress;
    std::string egress;

    friend bool operator==(const NetworkDef&, const NetworkDef&) = default;
};

// Checks every model invariant and returns one human-readable violation per
// breach, each naming the offending element. Empty result means the
// definition is a valid network. Never throws.
std::vector<std::string> validate_network(const NetworkDef& def);

// ---------------------------------------------------------------------------
// Network: the validated, indexed, immutable base model. All traversal state
// lives elsewhere; a Network is safe to share across concurrent runs.
// ---------------------------------------------------------------------------

class Network {
public:
    struct Fact {
        std::string id;
        std::string name;
        bool initial = false;
        std::string common_property; // empty: none
        std::uint32_t owner = 0;     // container index
        std::uint32_t slot = 0;      // position within the owner's fact list
    };

    struct GuardTerm {
        std::uint32_t fact = 0;
        bool value = true;
    };

    struct Container {
        std::string id;
        std::string name;
        std::vector<std::uint32_t> facts; // fact indices, document order
        std::vector<GuardTerm> guard;
        // (link index, neighbor container) pairs traversable from this
        // container, in link document order.
        std::vector<std::pair<std::uint32_t, std::uint32_t>> incident;
    };

    struct Link {
        std::string id;
        std::uint32_t a = 0;
        std::uint32_t b = 0;
        bool bidirectional = true;
    };

    // Throws ValidationError listing every violation when def is invalid.
    explicit Network(NetworkDef def);

    const NetworkDef& def() const { return def_; }

    std::size_t container_count() const { return containers_.size(); }
    std::size_t fact_count() const { return facts_.size(); }
    std::size_t link_count() const { return links_.size(); }

    const Container& container(std::uint32_t idx) const { return containers_[idx]; }
    const Fact& fact(std::uint32_t idx) const { return facts_[idx]; }
    const Link& link(std::uint32_t idx) const { return links_[idx]; }

    std::uint32_t ingress() const { return ingress_; }
    std::uint32_t egress() const { return egress_; }

    // Unique common-property labels, in first-appearance order.
    const std::vector<std::string>& common_properties() const { return common_properties_; }

    // Throw std::invalid_argument for ids not present in the network.
    std::uint32_t container_index(std::string_view id) const;
    std::uint32_t fact_index(std::string_view id) const;
    std::uint32_t link_index(std::string_view id) const;

    bool has_fact(std::string_view id) const { return fact_by_id_.count(std::string(id)) > 0; }

private:
    NetworkDef def_;
    std::vector<Container> containers_;
    std::vector<Fact> facts_;
    std::vector<Link> links_;
    std::vector<std::string> common_properties_;
    std::unordered_map<std::string, std::uint32_t> container_by_id_;
    std::unordered_map<std::string, std::uint32_t> fact_by_id_;
    std::unordered_map<std::string, std::uint32_t> link_by_id_;
    std::uint32_t ingress_ = 0;
    std::uint32_t egress_ = 0;
};

// For each generic rule and each link whose endpoints carry all required
// common properties, emits one concrete rule per admissible orientation
// (source=a/target=b, plus the reverse for bidirectional links). Emitted ids
// are deterministic functions of (generic rule id, link id, orientation), and
// the output order is fixed by document order.
std::vector<RuleDef> instantiate_generic_rules(const Network& net);

} // namespace bbnet
