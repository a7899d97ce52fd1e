#include "bbnet/traversal.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <set>

namespace bbnet {

const char* to_string(Termination t) {
    switch (t) {
    case Termination::exhausted: return "exhausted";
    case Termination::node_cap: return "node_cap";
    case Termination::time_limit: return "time_limit";
    }
    return "unknown";
}

std::vector<CompiledRule> compile_rules(const Network& net, const std::vector<RuleDef>& defs) {
    std::vector<CompiledRule> out;
    out.reserve(defs.size());
    for (const auto& rd : defs) {
        CompiledRule r;
        r.id = rd.id;
        std::set<std::uint32_t> owners;
        for (auto [src, dst] : {std::pair{&rd.pre, &r.pre}, std::pair{&rd.post, &r.post}}) {
            for (const auto& c : *src) {
                std::uint32_t fi = net.fact_index(c.fact);
                dst->push_back({fi, c.value});
                owners.insert(net.fact(fi).owner);
            }
        }
        r.footprint.assign(owners.begin(), owners.end());
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<CompiledRule> concrete_rules(const Network& net) {
    std::vector<RuleDef> defs = net.def().rules;
    auto generics = instantiate_generic_rules(net);
    defs.insert(defs.end(), generics.begin(), generics.end());
    return compile_rules(net, defs);
}

RealityPath RealityPath::seed(const Network& net) {
    RealityPath p;
    p.link_usage_.assign(net.link_count(), 0);
    p.global_state_.resize(net.fact_count());
    for (std::uint32_t fi = 0; fi < net.fact_count(); ++fi)
        p.global_state_[fi] = net.fact(fi).initial;
    p.transitions_.push_back(Transition{net.ingress(), std::nullopt, std::nullopt, {}, {}});
    p.history_.push_back(p.global_state_);
    return p;
}

bool RealityPath::resolve(const Network& net, std::uint32_t fact) const {
    const auto& f = net.fact(fact);
    auto it = current_view_.find(f.owner);
    if (it != current_view_.end())
        return variants_[it->second].values[f.slot];
    return f.initial;
}

RealityPath::Applied RealityPath::apply(const Network& net, const CompiledRule& rule) {
    Applied result;

    // Touched containers, in order of first appearance in the postconditions.
    std::vector<std::uint32_t> touched;
    for (const auto& c : rule.post) {
        std::uint32_t owner = net.fact(c.fact).owner;
        if (std::find(touched.begin(), touched.end(), owner) == touched.end())
            touched.push_back(owner);
    }

    for (std::uint32_t ci : touched) {
        const auto& container = net.container(ci);

        std::vector<bool> current(container.facts.size());
        for (std::size_t slot = 0; slot < container.facts.size(); ++slot)
            current[slot] = resolve(net, container.facts[slot]);

        std::vector<bool> updated = current;
        for (const auto& c : rule.post) {
            const auto& f = net.fact(c.fact);
            if (f.owner == ci)
                updated[f.slot] = c.value;
        }

        if (updated == current)
            continue; // no-op assignment, the view already matches

        for (std::size_t slot = 0; slot < container.facts.size(); ++slot) {
            if (updated[slot] != current[slot]) {
                result.changed.push_back({container.facts[slot], updated[slot]});
                global_state_[container.facts[slot]] = updated[slot];
            }
        }

        // Reuse a matching variant of this container if the path already
        // holds one; otherwise clone a new one.
        std::uint32_t variant_idx = UINT32_MAX;
        for (std::uint32_t vi = 0; vi < variants_.size(); ++vi) {
            if (variants_[vi].container == ci && variants_[vi].values == updated) {
                variant_idx = vi;
                break;
            }
        }
        if (variant_idx == UINT32_MAX) {
            variant_idx = static_cast<std::uint32_t>(variants_.size());
            variants_.push_back(Variant{ci, std::move(updated), transitions_.size()});
            ++result.new_variant_count;
        }
        current_view_[ci] = variant_idx;
        result.variants.push_back(variant_idx);
    }
    return result;
}

void RealityPath::push_move(std::uint32_t to, std::uint32_t via_link,
                            std::optional<std::uint32_t> rule, Applied applied) {
    ++link_usage_[via_link];
    transitions_.push_back(Transition{to, via_link, rule, std::move(applied.variants),
                                      std::move(applied.changed)});
    history_.push_back(global_state_);
}

bool RealityPath::state_seen(std::uint32_t container, const std::vector<bool>& assignment) const {
    for (std::size_t i = 0; i < transitions_.size(); ++i) {
        if (transitions_[i].to == container && history_[i] == assignment)
            return true;
    }
    return false;
}

bool resolve_fact(const RealityPath& path, const Network& net, std::string_view fact_id) {
    return path.resolve(net, net.fact_index(fact_id));
}

bool rule_applicable(const RealityPath& path, const Network& net, const CompiledRule& rule,
                     std::uint32_t current, std::uint32_t adjacent) {
    for (std::uint32_t owner : rule.footprint) {
        if (owner != current && owner != adjacent)
            return false;
    }
    for (const auto& c : rule.pre) {
        if (path.resolve(net, c.fact) != c.value)
            return false;
    }
    return true;
}

namespace {

bool guard_holds_under(const Network& net, std::uint32_t container,
                       const std::vector<bool>& assignment) {
    for (const auto& g : net.container(container).guard) {
        if (assignment[g.fact] != g.value)
            return false;
    }
    return true;
}

} // namespace

bool guard_holds(const RealityPath& path, const Network& net, std::uint32_t container) {
    return guard_holds_under(net, container, path.global_state());
}

std::vector<RealityPath> generate_children(const RealityPath& path, const Network& net,
                                           const std::vector<CompiledRule>& rules,
                                           const TraversalConfig& cfg) {
    std::vector<RealityPath> children;
    const std::uint32_t head = path.head();

    for (auto [link, neighbor] : net.container(head).incident) {
        if (path.link_usage(link) >= cfg.link_cap)
            continue;

        // Set 1: plain move, fact space untouched.
        if (guard_holds_under(net, neighbor, path.global_state()) &&
            !path.state_seen(neighbor, path.global_state())) {
            RealityPath child = path;
            child.push_move(neighbor, link, std::nullopt, {});
            children.push_back(std::move(child));
        }

        // Set 2: move combined with one rule application.
        for (std::uint32_t ri = 0; ri < rules.size(); ++ri) {
            const CompiledRule& rule = rules[ri];
            if (!rule_applicable(path, net, rule, head, neighbor))
                continue;

            std::vector<bool> post_state = path.global_state();
            for (const auto& c : rule.post)
                post_state[c.fact] = c.value;

            if (!guard_holds_under(net, neighbor, post_state))
                continue;
            if (path.state_seen(neighbor, post_state))
                continue;

            RealityPath child = path;
            auto applied = child.apply(net, rule);
            child.push_move(neighbor, link, ri, std::move(applied));
            children.push_back(std::move(child));
        }
    }
    return children;
}

TraversalResult traverse(const Network& net, const TraversalConfig& cfg) {
    if (cfg.link_cap < 1)
        throw std::invalid_argument("link_cap must be >= 1");
    if (cfg.node_cap && *cfg.node_cap < 1)
        throw std::invalid_argument("node_cap must be >= 1 when set");

    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    TraversalResult res;
    res.rules = concrete_rules(net);

    std::deque<RealityPath> frontier;
    frontier.push_back(RealityPath::seed(net));
    res.total_paths_generated = 1;

    while (true) {
        if (frontier.empty()) {
            res.termination = Termination::exhausted;
            break;
        }
        if (cfg.node_cap && res.expansions >= *cfg.node_cap) {
            res.termination = Termination::node_cap;
            break;
        }
        if (cfg.time_limit_seconds && elapsed() > *cfg.time_limit_seconds) {
            res.termination = Termination::time_limit;
            break;
        }

        RealityPath path = std::move(frontier.front());
        frontier.pop_front();
        ++res.expansions;

        auto children = generate_children(path, net, res.rules, cfg);
        if (children.empty()) {
            path.set_status(PathStatus::terminated);
            continue;
        }
        for (auto& child : children) {
            ++res.total_paths_generated;
            res.total_variants_created +=
                static_cast<long long>(child.variants().size() - path.variants().size());
            if (child.head() == net.egress()) {
                child.set_status(PathStatus::reached_egress);
                res.attack_paths.push_back(std::move(child));
            } else {
                frontier.push_back(std::move(child));
            }
        }
    }

    res.runtime_seconds = elapsed();
    return res;
}

std::string canonical_sequence(const RealityPath& path, const Network& net,
                               const std::vector<CompiledRule>& rules) {
    std::string out;
    for (const auto& t : path.transitions()) {
        if (!out.empty())
            out += ';';
        out += net.container(t.to).id;
        out += '|';
        out += t.applied_rule ? rules[*t.applied_rule].id : "-";
    }
    return out;
}

} // namespace bbnet
