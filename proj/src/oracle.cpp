#include "bbnet/oracle.hpp"

#include <algorithm>
#include <set>

namespace bbnet {

namespace {

// The oracle evaluates rule definitions on its own, against the flat global
// assignment, so it shares no evaluation machinery with the engine.
struct OracleRule {
    std::string id;
    std::vector<std::pair<std::uint32_t, bool>> pre;
    std::vector<std::pair<std::uint32_t, bool>> post;
    std::set<std::uint32_t> owners;
};

struct Enumerator {
    const Network& net;
    int link_cap;
    std::vector<OracleRule> rules;
    std::vector<OraclePath> found;

    bool guard_ok(std::uint32_t container, const std::vector<bool>& assignment) const {
        for (const auto& g : net.container(container).guard)
            if (assignment[g.fact] != g.value)
                return false;
        return true;
    }

    static bool seen(const std::vector<GlobalState>& history, std::uint32_t location,
                     const std::vector<bool>& assignment) {
        for (const auto& s : history)
            if (s.location == location && s.assignment == assignment)
                return true;
        return false;
    }

    // `steps` and `history` already include the current state.
    void search(const GlobalState& state, std::vector<OracleStep> steps,
                std::vector<int> link_usage, std::vector<GlobalState> history) {
        if (state.location == net.egress()) {
            found.push_back(OraclePath{std::move(steps)});
            return;
        }

        for (auto [link, neighbor] : net.container(state.location).incident) {
            if (link_usage[link] >= link_cap)
                continue;

            // Move with the fact space untouched.
            if (guard_ok(neighbor, state.assignment) &&
                !seen(history, neighbor, state.assignment)) {
                GlobalState next{neighbor, state.assignment};
                auto next_steps = steps;
                next_steps.push_back({net.container(neighbor).id, net.link(link).id, ""});
                auto next_usage = link_usage;
                ++next_usage[link];
                auto next_history = history;
                next_history.push_back(next);
                search(next, std::move(next_steps), std::move(next_usage),
                       std::move(next_history));
            }

            // Move combined with one rule.
            for (const auto& rule : rules) {
                bool fits = true;
                for (std::uint32_t owner : rule.owners)
                    if (owner != state.location && owner != neighbor) {
                        fits = false;
                        break;
                    }
                if (!fits)
                    continue;
                for (const auto& [fact, value] : rule.pre)
                    if (state.assignment[fact] != value) {
                        fits = false;
                        break;
                    }
                if (!fits)
                    continue;

                GlobalState next{neighbor, state.assignment};
                for (const auto& [fact, value] : rule.post)
                    next.assignment[fact] = value;

                if (!guard_ok(neighbor, next.assignment) ||
                    seen(history, neighbor, next.assignment))
                    continue;

                auto next_steps = steps;
                next_steps.push_back({net.container(neighbor).id, net.link(link).id, rule.id});
                auto next_usage = link_usage;
                ++next_usage[link];
                auto next_history = history;
                next_history.push_back(next);
                search(next, std::move(next_steps), std::move(next_usage),
                       std::move(next_history));
            }
        }
    }
};

} // namespace

std::vector<OraclePath> enumerate_paths_bruteforce(const Network& net,
                                                   const TraversalConfig& cfg) {
    if (net.container_count() > 6 || net.fact_count() > 8)
        throw std::domain_error("network too large for brute-force enumeration (max 6 containers, 8 facts)");
    if (cfg.link_cap < 1)
        throw std::invalid_argument("link_cap must be >= 1");

    Enumerator e{net, cfg.link_cap, {}, {}};

    std::vector<RuleDef> defs = net.def().rules;
    auto generics = instantiate_generic_rules(net);
    defs.insert(defs.end(), generics.begin(), generics.end());
    for (const auto& rd : defs) {
        OracleRule r;
        r.id = rd.id;
        for (const auto& c : rd.pre) {
            std::uint32_t fi = net.fact_index(c.fact);
            r.pre.emplace_back(fi, c.value);
            r.owners.insert(net.fact(fi).owner);
        }
        for (const auto& c : rd.post) {
            std::uint32_t fi = net.fact_index(c.fact);
            r.post.emplace_back(fi, c.value);
            r.owners.insert(net.fact(fi).owner);
        }
        e.rules.push_back(std::move(r));
    }

    GlobalState start;
    start.location = net.ingress();
    start.assignment.resize(net.fact_count());
    for (std::uint32_t fi = 0; fi < net.fact_count(); ++fi)
        start.assignment[fi] = net.fact(fi).initial;

    e.search(start, {{net.container(net.ingress()).id, "", ""}}, std::vector<int>(net.link_count(), 0),
             {start});
    return std::move(e.found);
}

std::string canonical_sequence(const OraclePath& path) {
    std::string out;
    for (const auto& s : path.steps) {
        if (!out.empty())
            out += ';';
        out += s.container;
        out += '|';
        out += s.rule.empty() ? "-" : s.rule;
    }
    return out;
}

DiffReport diff_results(const TraversalResult& engine, const std::vector<OraclePath>& oracle,
                        const Network& net) {
    std::vector<std::string> engine_paths;
    engine_paths.reserve(engine.attack_paths.size());
    for (const auto& p : engine.attack_paths)
        engine_paths.push_back(canonical_sequence(p, net, engine.rules));

    std::vector<std::string> oracle_paths;
    oracle_paths.reserve(oracle.size());
    for (const auto& p : oracle)
        oracle_paths.push_back(canonical_sequence(p));

    std::sort(engine_paths.begin(), engine_paths.end());
    std::sort(oracle_paths.begin(), oracle_paths.end());

    DiffReport report;
    std::set_difference(oracle_paths.begin(), oracle_paths.end(), engine_paths.begin(),
                        engine_paths.end(), std::back_inserter(report.missing));
    std::set_difference(engine_paths.begin(), engine_paths.end(), oracle_paths.begin(),
                        oracle_paths.end(), std::back_inserter(report.extra));
    return report;
}

} // namespace bbnet
