#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "bbnet/io.hpp"
#include "bbnet/network.hpp"
#include "bbnet/topology.hpp"
#include "bbnet/traversal.hpp"
#include "support/tiny_networks.hpp"

using namespace bbnet;

namespace {

// A-B with one toggleable fact on B.
Network toggle_network() {
    NetworkDef def;
    def.containers.push_back({"A", "A", {}, {}});
    def.containers.push_back({"B", "B", {{"f", "f", false, ""}}, {}});
    def.links.push_back({"l1", "A", "B", true});
    def.rules.push_back({"on", {}, {{"f", true}}});
    def.rules.push_back({"off", {{"f", true}}, {{"f", false}}});
    def.ingress = "A";
    def.egress = "B";
    return Network(std::move(def));
}

const CompiledRule& rule_by_id(const std::vector<CompiledRule>& rules, std::string_view id) {
    for (const auto& r : rules)
        if (r.id == id)
            return r;
    throw std::logic_error("no such rule in test setup");
}

std::vector<std::string> canonical_paths(const TraversalResult& res, const Network& net) {
    std::vector<std::string> out;
    for (const auto& p : res.attack_paths)
        out.push_back(canonical_sequence(p, net, res.rules));
    return out;
}

} // namespace

TEST_CASE("resolve_fact falls back to the base network") {
    Network net = toggle_network();
    RealityPath path = RealityPath::seed(net);
    CHECK(resolve_fact(path, net, "f") == false);
    CHECK_THROWS_AS(resolve_fact(path, net, "ghost"), std::invalid_argument);
}

TEST_CASE("resolve_fact prefers the path's latest variant") {
    Network net = toggle_network();
    auto rules = concrete_rules(net);
    RealityPath path = RealityPath::seed(net);

    auto applied = path.apply(net, rule_by_id(rules, "on"));
    path.push_move(net.container_index("B"), 0, 0, std::move(applied));
    CHECK(resolve_fact(path, net, "f") == true);
    CHECK(path.variants().size() == 1);

    SUBCASE("the latest of two successive variants wins") {
        auto off = path.apply(net, rule_by_id(rules, "off"));
        path.push_move(net.container_index("A"), 0, 1, std::move(off));
        CHECK(resolve_fact(path, net, "f") == false);
        CHECK(path.variants().size() == 2);
    }

    SUBCASE("matching variant is reused instead of cloned") {
        auto off = path.apply(net, rule_by_id(rules, "off"));
        path.push_move(net.container_index("A"), 0, 1, std::move(off));
        auto again = path.apply(net, rule_by_id(rules, "on"));
        CHECK(again.new_variant_count == 0);
        CHECK(path.variants().size() == 2); // back to the first variant's values
        CHECK(resolve_fact(path, net, "f") == true);
    }
}

TEST_CASE("apply is a no-op when postconditions match the view") {
    Network net = toggle_network();
    auto rules = concrete_rules(net);
    RealityPath path = RealityPath::seed(net);

    auto applied = path.apply(net, rule_by_id(rules, "off")); // f already false
    CHECK(applied.new_variant_count == 0);
    CHECK(applied.variants.empty());
    CHECK(applied.changed.empty());
    CHECK(path.variants().empty());
}

TEST_CASE("apply can touch both endpoint containers") {
    NetworkDef def;
    def.containers.push_back({"A", "A", {{"fa", "fa", false, ""}}, {}});
    def.containers.push_back({"B", "B", {{"fb", "fb", false, ""}}, {}});
    def.links.push_back({"l1", "A", "B", true});
    def.rules.push_back({"both", {}, {{"fa", true}, {"fb", true}}});
    def.ingress = "A";
    def.egress = "B";
    Network net(std::move(def));

    auto rules = concrete_rules(net);
    RealityPath path = RealityPath::seed(net);
    auto applied = path.apply(net, rules[0]);
    CHECK(applied.new_variant_count == 2);
    CHECK(applied.variants.size() == 2);
    CHECK(path.variants().size() == 2);
    CHECK(resolve_fact(path, net, "fa") == true);
    CHECK(resolve_fact(path, net, "fb") == true);
}

TEST_CASE("rule_applicable") {
    Network net = build_worked_example();
    auto rules = concrete_rules(net);
    RealityPath seed = RealityPath::seed(net);
    const std::uint32_t c1 = net.container_index("1");
    const std::uint32_t c2 = net.container_index("2");
    const std::uint32_t c5 = net.container_index("5");

    SUBCASE("empty preconditions with footprint inside the pair") {
        CHECK(rule_applicable(seed, net, rule_by_id(rules, "r1"), c1, c2));
    }
    SUBCASE("fact owned by a third container") {
        // r5 reads fact3 (container 5) and writes fact4 (container 6).
        CHECK_FALSE(rule_applicable(seed, net, rule_by_id(rules, "r5"), c1, c2));
    }
    SUBCASE("precondition gates the rule until the path sets it") {
        CHECK_FALSE(rule_applicable(seed, net, rule_by_id(rules, "r3"), c2, c5));
        RealityPath path = seed;
        auto applied = path.apply(net, rule_by_id(rules, "r1"));
        path.push_move(c2, net.link_index("l12"), 0, std::move(applied));
        CHECK(rule_applicable(path, net, rule_by_id(rules, "r3"), c2, c5));
    }
}

TEST_CASE("generate_children: single move when no rules exist") {
    NetworkDef def;
    def.containers.push_back({"A", "A", {}, {}});
    def.containers.push_back({"B", "B", {}, {}});
    def.links.push_back({"l1", "A", "B", true});
    def.ingress = "A";
    def.egress = "B";
    Network net(std::move(def));

    auto rules = concrete_rules(net);
    TraversalConfig cfg;
    auto children = generate_children(RealityPath::seed(net), net, rules, cfg);
    REQUIRE(children.size() == 1);
    CHECK(children[0].head() == net.container_index("B"));
    CHECK(children[0].transitions().size() == 2);
}

TEST_CASE("generate_children: exhausted link cap terminates the path") {
    Network net = toggle_network();
    auto rules = concrete_rules(net);
    TraversalConfig cfg; // link_cap 1
    auto children = generate_children(RealityPath::seed(net), net, rules, cfg);
    REQUIRE(!children.empty());
    for (const auto& child : children)
        CHECK(generate_children(child, net, rules, cfg).empty());
}

TEST_CASE("generate_children: worked example at the ingress") {
    Network net = build_worked_example();
    auto rules = concrete_rules(net);
    TraversalConfig cfg;
    auto children = generate_children(RealityPath::seed(net), net, rules, cfg);

    std::set<std::string> seqs;
    for (const auto& c : children)
        seqs.insert(canonical_sequence(c, net, rules));
    CHECK(seqs.count("1|-;2|r1"));
    CHECK(seqs.count("1|-;4|r2"));
    // Plain moves come too, fact space untouched.
    CHECK(seqs.count("1|-;2|-"));
    CHECK(seqs.count("1|-;4|-"));
}

TEST_CASE("traverse: two containers, no rules") {
    NetworkDef def;
    def.containers.push_back({"A", "A", {}, {}});
    def.containers.push_back({"B", "B", {}, {}});
    def.links.push_back({"l1", "A", "B", true});
    def.ingress = "A";
    def.egress = "B";
    Network net(std::move(def));

    TraversalConfig cfg;
    auto res = traverse(net, cfg);
    CHECK(res.termination == Termination::exhausted);
    REQUIRE(res.attack_paths.size() == 1);
    CHECK(canonical_sequence(res.attack_paths[0], net, res.rules) == "A|-;B|-");
    CHECK(res.total_paths_generated == 2);
    CHECK(res.expansions == 1);
    CHECK(res.total_variants_created == 0);
}

TEST_CASE("traverse rejects a confgured link cap below one") {
    Network net = toggle_network();
    TraversalConfig cfg;
    cfg.link_cap = 0;
    CHECK_THROWS_AS(traverse(net, cfg), std::invalid_argument);
}

TEST_CASE("traverse: worked example finds both documented pathways") {
    Network net = build_worked_example();
    TraversalConfig cfg; // link_cap 1
    auto res = traverse(net, cfg);
    auto seqs = canonical_paths(res, net);
    CHECK(std::count(seqs.begin(), seqs.end(), "1|-;2|r1;5|r3;6|r5") == 1);
    CHECK(std::count(seqs.begin(), seqs.end(), "1|-;4|r2;5|r4;6|r5") == 1);
    CHECK(res.termination == Termination::exhausted);
}

TEST_CASE("traverse: node cap and time limit terminations") {
    Network net = build_worked_example();
    TraversalConfig cfg;
    cfg.link_cap = 2;
    cfg.node_cap = 3;
    auto res = traverse(net, cfg);
    CHECK(res.termination == Termination::node_cap);
    CHECK(res.expansions == 3);

    TraversalConfig timed;
    timed.link_cap = 2;
    timed.time_limit_seconds = 0.0;
    CHECK(traverse(net, timed).termination == Termination::time_limit);
}

TEST_CASE("traversal invariants over random tiny networks") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        Network net = bbnet::testing::make_tiny_network(seed);
        const NetworkDef def_before = net.def();

        for (int cap : {1, 2}) {
            TraversalConfig cfg;
            cfg.link_cap = cap;
            auto res = traverse(net, cfg);

            // Base immutability.
            CHECK(net.def() == def_before);

            for (const auto& path : res.attack_paths) {
                // Link cap holds per path.
                std::vector<int> usage(net.link_count(), 0);
                for (const auto& t : path.transitions())
                    if (t.via_link)
                        ++usage[*t.via_link];
                for (int u : usage)
                    CHECK(u <= cap);

                // Loop freedom bound on length.
                CHECK(path.transitions().size() <= cap * net.link_count() + 1);

                // In-path variant dedup per container.
                for (std::size_t i = 0; i < path.variants().size(); ++i)
                    for (std::size_t j = i + 1; j < path.variants().size(); ++j)
                        if (path.variants()[i].container == path.variants()[j].container)
                            CHECK(path.variants()[i].values != path.variants()[j].values);
            }

            // Isolation: attack paths never share variant storage.
            std::set<const Variant*> storage;
            for (const auto& path : res.attack_paths)
                for (const auto& v : path.variants())
                    CHECK(storage.insert(&v).second);
        }
    }
}

TEST_CASE("traverse is deterministic") {
    for (std::uint64_t seed = 30; seed < 40; ++seed) {
        Network net = bbnet::testing::make_tiny_network(seed);
        TraversalConfig cfg;
        cfg.link_cap = 2;
        auto a = traverse(net, cfg);
        auto b = traverse(net, cfg);
        CHECK(canonical_paths(a, net) == canonical_paths(b, net));
        CHECK(a.total_paths_generated == b.total_paths_generated);
        CHECK(a.total_variants_created == b.total_variants_created);
        CHECK(a.expansions == b.expansions);
    }
}

TEST_CASE("raising the link cap only adds attack paths") {
    for (std::uint64_t seed = 50; seed < 60; ++seed) {
        Network net = bbnet::testing::make_tiny_network(seed);
        std::vector<std::multiset<std::string>> by_cap;
        for (int cap : {1, 2, 3}) {
            TraversalConfig cfg;
            cfg.link_cap = cap;
            auto res = traverse(net, cfg);
            auto seqs = canonical_paths(res, net);
            by_cap.emplace_back(seqs.begin(), seqs.end());
        }
        for (std::size_t i = 0; i + 1 < by_cap.size(); ++i)
            CHECK(std::includes(by_cap[i + 1].begin(), by_cap[i + 1].end(), by_cap[i].begin(),
                                by_cap[i].end()));
    }
}
