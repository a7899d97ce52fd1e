#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bbnet/io.hpp"
#include "bbnet/network.hpp"
#include "bbnet/oracle.hpp"
#include "bbnet/state_space.hpp"
#include "bbnet/topology.hpp"
#include "bbnet/traversal.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write \"" + out_path + "\"");
    out << text;
}

struct RunArgs {
    std::string network;
    int link_cap = 1;
    long long node_cap = 0;
    double time_limit = 0.0;
    bool has_node_cap = false;
    bool has_time_limit = false;
    std::string out;
};

struct CountArgs {
    long long containers = 0;
    long long facts = 0;
    bool exact = false;
    bool approx = false;
    bool states = false;
    long long k = -1;
    bool has_k = false;
};

struct GenArgs {
    std::string kind;
    int containers = 2;
    int facts = 0;
    int rules = 0;
    std::uint64_t seed = 0;
    std::string out;
};

struct VerifyArgs {
    std::string network;
    int link_cap = 1;
};

struct BenchArgs {
    std::string kind;
    int containers = 2;
    int facts = 0;
    int rules = 0;
    std::uint64_t seed = 0;
    std::vector<int> caps;
    int trials = 20;
    double time_limit = 3600.0;
    std::string out;
};

int cmd_run(const RunArgs& a) {
    bbnet::Network net = bbnet::load_network(read_file(a.network));
    bbnet::TraversalConfig cfg;
    cfg.link_cap = a.link_cap;
    if (a.has_node_cap)
        cfg.node_cap = a.node_cap;
    if (a.has_time_limit)
        cfg.time_limit_seconds = a.time_limit;
    bbnet::TraversalResult res = bbnet::traverse(net, cfg);
    write_output(bbnet::export_result(res, net), a.out);
    return 0;
}

int cmd_count(const CountArgs& a) {
    const bbnet::StateSpaceParams p{a.containers, a.facts};
    int modes = int(a.exact) + int(a.approx) + int(a.states) + int(a.has_k);
    if (modes > 1)
        throw std::runtime_error("choose at most one of --exact, --approx, --states, --k");
    bbnet::BigCount count;
    if (a.states)
        count = bbnet::possible_states(p);
    else if (a.approx)
        count = bbnet::approx_path_count(p);
    else if (a.has_k)
        count = bbnet::paths_with_k_intermediates(p, a.k);
    else
        count = bbnet::exact_path_count(p);
    std::cout << bbnet::format_count(count) << "\n";
    return 0;
}

int cmd_gen(const GenArgs& a) {
    bbnet::TopologySpec spec;
    spec.kind = bbnet::topology_kind_from_string(a.kind);
    spec.container_count = a.containers;
    spec.facts_per_container = a.facts;
    spec.rule_count = a.rules;
    spec.seed = a.seed;
    bbnet::Network net = bbnet::generate_topology(spec);
    write_output(bbnet::serialize_network(net), a.out);
    return 0;
}

int cmd_verify(const VerifyArgs& a) {
    bbnet::Network net = bbnet::load_network(read_file(a.network));
    bbnet::TraversalConfig cfg;
    cfg.link_cap = a.link_cap;
    bbnet::TraversalResult engine = bbnet::traverse(net, cfg);
    auto oracle = bbnet::enumerate_paths_bruteforce(net, cfg);
    bbnet::DiffReport diff = bbnet::diff_results(engine, oracle, net);
    if (diff.empty()) {
        std::cout << "equivalent (" << engine.attack_paths.size() << " attack paths)\n";
        return 0;
    }
    for (const auto& p : diff.missing)
        std::cerr << "missing: " << p << "\n";
    for (const auto& p : diff.extra)
        std::cerr << "extra: " << p << "\n";
    std::cerr << "engine and oracle disagree on " << diff.missing.size() + diff.extra.size()
              << " path(s)\n";
    return 1;
}

int cmd_bench(const BenchArgs& a) {
    bbnet::TopologySpec spec;
    spec.kind = bbnet::topology_kind_from_string(a.kind);
    spec.container_count = a.containers;
    spec.facts_per_container = a.facts;
    spec.rule_count = a.rules;
    spec.seed = a.seed;
    auto rows = bbnet::run_experiment(spec, a.caps, a.trials, a.time_limit);
    if (a.out.empty())
        bbnet::write_report(rows, std::cout);
    else
        bbnet::write_report(rows, a.out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Blackboard Architecture network modeling and attack-path enumeration"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "Enumerate attack paths in a network document");
    run->add_option("--network", run_args.network, "Network document (JSON)")->required();
    run->add_option("--link-cap", run_args.link_cap, "Max traversals per link per path")->required();
    auto* node_cap_opt = run->add_option("--node-cap", run_args.node_cap, "Max path expansions");
    auto* time_limit_opt = run->add_option("--time-limit", run_args.time_limit, "Time limit in seconds");
    run->add_option("--out", run_args.out, "Result file (stdout when omitted)");

    CountArgs count_args;
    auto* count = app.add_subcommand("count", "State-space and path-count quantities");
    count->add_option("--containers", count_args.containers, "Container count m")->required();
    count->add_option("--facts", count_args.facts, "Fact count n")->required();
    count->add_flag("--exact", count_args.exact, "Exact path count (default)");
    count->add_flag("--approx", count_args.approx, "Leading-terms approximation");
    count->add_flag("--states", count_args.states, "Possible state count m*2^n");
    auto* k_opt = count->add_option("--k", count_args.k, "Paths with exactly k intermediate states");

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "Generate a topology network document");
    gen->add_option("--kind", gen_args.kind, "ring|tree|star|bus|mesh")->required();
    gen->add_option("--containers", gen_args.containers, "Container count")->required();
    gen->add_option("--facts", gen_args.facts, "Facts per container");
    gen->add_option("--rules", gen_args.rules, "Rule count");
    gen->add_option("--seed", gen_args.seed, "Generator seed");
    gen->add_option("--out", gen_args.out, "Output file (stdout when omitted)");

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "Cross-check the engine against the brute-force oracle");
    verify->add_option("--network", verify_args.network, "Network document (JSON)")->required();
    verify->add_option("--link-cap", verify_args.link_cap, "Max traversals per link per path")->required();

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "Run the topology experiment protocol");
    bench->add_option("--kind", bench_args.kind, "ring|tree|star|bus|mesh")->required();
    bench->add_option("--containers", bench_args.containers, "Container count")->required();
    bench->add_option("--facts", bench_args.facts, "Facts per container");
    bench->add_option("--rules", bench_args.rules, "Rule count");
    bench->add_option("--seed", bench_args.seed, "Generator seed");
    bench->add_option("--caps", bench_args.caps, "Link caps, e.g. 1,2,3")->required()->delimiter(',');
    bench->add_option("--trials", bench_args.trials, "Trials per link cap");
    bench->add_option("--time-limit", bench_args.time_limit, "Per-run time limit in seconds");
    bench->add_option("--out", bench_args.out, "CSV file (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    run_args.has_node_cap = node_cap_opt->count() > 0;
    run_args.has_time_limit = time_limit_opt->count() > 0;
    count_args.has_k = k_opt->count() > 0;

    try {
        if (run->parsed())
            return cmd_run(run_args);
        if (count->parsed())
            return cmd_count(count_args);
        if (gen->parsed())
            return cmd_gen(gen_args);
        if (verify->parsed())
            return cmd_verify(verify_args);
        if (bench->parsed())
            return cmd_bench(bench_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
