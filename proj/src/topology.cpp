#include "bbnet/topology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>

#include "bbnet/traversal.hpp"

namespace bbnet {

const char* to_string(TopologyKind k) {
    switch (k) {
    case TopologyKind::ring: return "ring";
    case TopologyKind::tree: return "tree";
    case TopologyKind::star: return "star";
    case TopologyKind::bus: return "bus";
    case TopologyKind::mesh: return "mesh";
    }
    return "unknown";
}

TopologyKind topology_kind_from_string(std::string_view s) {
    if (s == "ring") return TopologyKind::ring;
    if (s == "tree") return TopologyKind::tree;
    if (s == "star") return TopologyKind::star;
    if (s == "bus") return TopologyKind::bus;
    if (s == "mesh") return TopologyKind::mesh;
    throw std::invalid_argument("unknown topology kind \"" + std::string(s) + "\"");
}

namespace {

// mt19937_64 output is pinned by the standard; the distribution classes are
// not, so sampling sticks to raw engine output.
struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    std::uint64_t next(std::uint64_t bound) { return gen() % bound; }
    bool coin() { return (gen() & 1) != 0; }
};

std::string container_id(int i) { return "c" + std::to_string(i); }

} // namespace

Network generate_topology(const TopologySpec& spec) {
    if (spec.container_count < 2)
        throw std::invalid_argument("container_count must be at least 2");
    if (spec.facts_per_container < 0 || spec.rule_count < 0)
        throw std::invalid_argument("facts_per_container and rule_count must be non-negative");
    if (spec.guard_fraction < 0.0 || spec.guard_fraction > 1.0)
        throw std::invalid_argument("guard_fraction must lie in [0, 1]");

    Rng rng(spec.seed);
    const int m = spec.container_count;
    NetworkDef def;

    for (int i = 1; i <= m; ++i) {
        ContainerDef c;
        c.id = container_id(i);
        c.name = c.id;
        for (int f = 1; f <= spec.facts_per_container; ++f) {
            FactDef fd;
            fd.id = c.id + "_f" + std::to_string(f);
            fd.name = fd.id;
            fd.value = false;
            c.facts.push_back(std::move(fd));
        }
        def.containers.push_back(std::move(c));
    }

    auto add_link = [&](int a, int b) {
        LinkDef l;
        l.id = "l" + std::to_string(def.links.size() + 1);
        l.a = container_id(a);
        l.b = container_id(b);
        def.links.push_back(std::move(l));
    };

    switch (spec.kind) {
    case TopologyKind::ring:
        for (int i = 1; i < m; ++i)
            add_link(i, i + 1);
        add_link(m, 1);
        break;
    case TopologyKind::tree:
        for (int i = 2; i <= m; ++i)
            add_link(1 + static_cast<int>(rng.next(i - 1)), i);
        break;
    case TopologyKind::star:
        for (int i = 2; i <= m; ++i)
            add_link(1, i);
        break;
    case TopologyKind::bus:
        for (int i = 1; i < m; ++i)
            add_link(i, i + 1);
        break;
    case TopologyKind::mesh:
        for (int i = 1; i <= m; ++i)
            for (int j = i + 1; j <= m; ++j)
                add_link(i, j);
        break;
    }

    switch (spec.kind) {
    case TopologyKind::ring:
        // Antipodal pair, the "container 1 to container 4" placement.
        def.ingress = container_id(1);
        def.egress = container_id(1 + m / 2);
        break;
    case TopologyKind::tree: {
        std::vector<int> degree(m + 1, 0);
        for (const auto& l : def.links) {
            ++degree[std::stoi(l.a.substr(1))];
            ++degree[std::stoi(l.b.substr(1))];
        }
        int first_leaf = 0, last_leaf = 0;
        for (int i = 1; i <= m; ++i) {
            if (degree[i] == 1) {
                if (first_leaf == 0)
                    first_leaf = i;
                last_leaf = i;
            }
        }
        def.ingress = container_id(first_leaf);
        def.egress = container_id(last_leaf == first_leaf ? m : last_leaf);
        break;
    }
    case TopologyKind::star:
        def.ingress = container_id(2);
        def.egress = container_id(m >= 3 ? m : 1);
        break;
    case TopologyKind::bus:
        def.ingress = container_id(1);
        def.egress = container_id(m);
        break;
    case TopologyKind::mesh:
        def.ingress = container_id(1);
        def.egress = container_id(m >= 4 ? 4 : m);
        break;
    }

    // Rules draw their facts from one link's endpoint pair, which keeps every
    // footprint inside two link-connected containers.
    if (spec.facts_per_container > 0) {
        for (int r = 1; r <= spec.rule_count; ++r) {
            const LinkDef& l = def.links[rng.next(def.links.size())];
            std::vector<std::string> pool;
            for (const auto& c : def.containers) {
                if (c.id == l.a || c.id == l.b)
                    for (const auto& f : c.facts)
                        pool.push_back(f.id);
            }
            RuleDef rule;
            rule.id = "r" + std::to_string(r);
            for (const auto& fact : pool) {
                if (rng.next(3) == 0)
                    rule.pre.push_back({fact, rng.coin()});
            }
            const std::size_t post_count = 1 + rng.next(std::min<std::size_t>(2, pool.size()));
            std::vector<std::string> chosen;
            while (chosen.size() < post_count) {
                const auto& fact = pool[rng.next(pool.size())];
                if (std::find(chosen.begin(), chosen.end(), fact) == chosen.end())
                    chosen.push_back(fact);
            }
            for (const auto& fact : chosen)
                rule.post.push_back({fact, rng.coin()});
            def.rules.push_back(std::move(rule));
        }
    }

    if (spec.guard_fraction > 0.0 && spec.facts_per_container > 0) {
        std::vector<std::size_t> candidates;
        for (std::size_t i = 0; i < def.containers.size(); ++i) {
            if (def.containers[i].id != def.ingress)
                candidates.push_back(i);
        }
        for (std::size_t i = candidates.size(); i > 1; --i)
            std::swap(candidates[i - 1], candidates[rng.next(i)]);
        const auto guard_count = static_cast<std::size_t>(
            std::llround(spec.guard_fraction * static_cast<double>(candidates.size())));
        for (std::size_t i = 0; i < guard_count; ++i) {
            ContainerDef& c = def.containers[candidates[i]];
            const std::string& gate = c.facts.front().id;
            c.guard.push_back({gate, true});
            RuleDef unlock;
            unlock.id = "g_" + c.id;
            unlock.post.push_back({gate, true});
            def.rules.push_back(std::move(unlock));
        }
    }

    return Network(std::move(def));
}

Network build_worked_example() {
    NetworkDef def;

    auto container = [&](const std::string& id) {
        ContainerDef c;
        c.id = id;
        c.name = id;
        return c;
    };
    auto fact = [](const std::string& id) {
        FactDef f;
        f.id = id;
        f.name = id;
        f.value = false;
        return f;
    };

    def.containers.push_back(container("1"));
    auto c2 = container("2");
    c2.facts.push_back(fact("fact1"));
    def.containers.push_back(std::move(c2));
    def.containers.push_back(container("3"));
    auto c4 = container("4");
    c4.facts.push_back(fact("fact2"));
    def.containers.push_back(std::move(c4));
    auto c5 = container("5");
    c5.facts.push_back(fact("fact3"));
    def.containers.push_back(std::move(c5));
    auto c6 = container("6");
    c6.facts.push_back(fact("fact4"));
    def.containers.push_back(std::move(c6));

    auto link = [](const std::string& id, const std::string& a, const std::string& b) {
        LinkDef l;
        l.id = id;
        l.a = a;
        l.b = b;
        return l;
    };
    def.links.push_back(link("l12", "1", "2"));
    def.links.push_back(link("l14", "1", "4"));
    def.links.push_back(link("l25", "2", "5"));
    def.links.push_back(link("l45", "4", "5"));
    def.links.push_back(link("l56", "5", "6"));

    auto rule = [](const std::string& id, std::vector<ConditionDef> pre,
                   std::vector<ConditionDef> post) {
        RuleDef r;
        r.id = id;
        r.pre = std::move(pre);
        r.post = std::move(post);
        return r;
    };
    def.rules.push_back(rule("r1", {}, {{"fact1", true}}));
    def.rules.push_back(rule("r2", {}, {{"fact2", true}}));
    def.rules.push_back(rule("r3", {{"fact1", true}}, {{"fact3", true}}));
    def.rules.push_back(rule("r4", {{"fact2", true}}, {{"fact3", true}}));
    def.rules.push_back(rule("r5", {{"fact3", true}}, {{"fact4", true}}));

    def.ingress = "1";
    def.egress = "6";
    return Network(std::move(def));
}

std::vector<ExperimentRow> run_experiment(const TopologySpec& spec,
                                          const std::vector<int>& link_caps, int trials,
                                          double time_limit_seconds) {
    if (trials < 1)
        throw std::invalid_argument("trials must be at least 1");

    const Network net = generate_topology(spec);
    std::vector<ExperimentRow> rows;
    rows.reserve(link_caps.size());

    for (int cap : link_caps) {
        TraversalConfig cfg;
        cfg.link_cap = cap;
        cfg.time_limit_seconds = time_limit_seconds;

        ExperimentRow row;
        row.kind = spec.kind;
        row.link_cap = cap;
        row.trials = trials;

        double paths = 0.0, variants = 0.0, runtime = 0.0;
        for (int t = 0; t < trials; ++t) {
            TraversalResult res = traverse(net, cfg);
            paths += static_cast<double>(res.total_paths_generated);
            variants += static_cast<double>(res.total_variants_created);
            runtime += res.runtime_seconds;
            if (res.termination == Termination::time_limit)
                row.stopped_early = true;
        }
        row.avg_reality_paths = paths / trials;
        row.avg_variants = variants / trials;
        row.avg_runtime_seconds = row.stopped_early ? time_limit_seconds : runtime / trials;
        rows.push_back(row);
    }
    return rows;
}

void write_report(const std::vector<ExperimentRow>& rows, std::ostream& out) {
    if (rows.empty())
        throw std::invalid_argument("report requires at least one row");
    out << "topology,link_cap,trials,avg_reality_paths,avg_variants,avg_runtime_seconds,stopped_early\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%s,%d,%d,%.6f,%.6f,%.6f,%s\n", to_string(r.kind),
                      r.link_cap, r.trials, r.avg_reality_paths, r.avg_variants,
                      r.avg_runtime_seconds, r.stopped_early ? "true" : "false");
        out << buf;
    }
}

void write_report(const std::vector<ExperimentRow>& rows, const std::string& destination) {
    std::ofstream out(destination);
    if (!out)
        throw std::runtime_error("cannot write report to \"" + destination + "\"");
    write_report(rows, out);
    if (!out.good())
        throw std::runtime_error("failed while writing report to \"" + destination + "\"");
}

} // namespace bbnet
