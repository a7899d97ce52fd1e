#include "bbnet/io.hpp"

#include <json.hpp>

namespace bbnet {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

void reject_unknown_keys(const json& obj, const char* where,
                         std::initializer_list<const char*> allowed) {
    if (!obj.is_object())
        throw ParseError(std::string(where) + ": expected an object");
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (key == k) {
                known = true;
                break;
            }
        if (!known)
            throw ParseError(std::string(where) + ": unknown key \"" + key + "\"");
    }
}

const json& require(const json& obj, const char* key, const char* where) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ParseError(std::string(where) + ": missing key \"" + key + "\"");
    return *it;
}

std::string as_string(const json& v, const char* where) {
    if (!v.is_string())
        throw ParseError(std::string(where) + ": expected a string");
    return v.get<std::string>();
}

bool as_bool(const json& v, const char* where) {
    if (!v.is_boolean())
        throw ParseError(std::string(where) + ": expected a boolean");
    return v.get<bool>();
}

const json& as_array(const json& v, const char* where) {
    if (!v.is_array())
        throw ParseError(std::string(where) + ": expected an array");
    return v;
}

std::vector<ConditionDef> parse_conditions(const json& arr, const char* where) {
    std::vector<ConditionDef> out;
    for (const auto& e : as_array(arr, where)) {
        reject_unknown_keys(e, where, {"fact", "value"});
        out.push_back({as_string(require(e, "fact", where), where),
                       as_bool(require(e, "value", where), where)});
    }
    return out;
}

std::vector<GenericConditionDef> parse_generic_conditions(const json& arr, const char* where) {
    std::vector<GenericConditionDef> out;
    for (const auto& e : as_array(arr, where)) {
        reject_unknown_keys(e, where, {"role", "property", "value"});
        std::string role = as_string(require(e, "role", where), where);
        if (role != "source" && role != "target")
            throw ParseError(std::string(where) + ": role must be \"source\" or \"target\", got \"" +
                             role + "\"");
        out.push_back({role == "source" ? Role::source : Role::target,
                       as_string(require(e, "property", where), where),
                       as_bool(require(e, "value", where), where)});
    }
    return out;
}

} // namespace

NetworkDef parse_network_document(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("network document: ") + e.what());
    }
    if (!doc.is_object())
        throw ParseError("network document: top level must be an object");
    reject_unknown_keys(doc, "network document",
                        {"containers", "links", "rules", "generic_rules", "ingress", "egress"});

    NetworkDef def;

    for (const auto& c : as_array(require(doc, "containers", "network document"), "containers")) {
        reject_unknown_keys(c, "container", {"id", "name", "facts", "guard"});
        ContainerDef cd;
        cd.id = as_string(require(c, "id", "container"), "container.id");
        cd.name = as_string(require(c, "name", "container"), "container.name");
        for (const auto& f : as_array(require(c, "facts", "container"), "container.facts")) {
            reject_unknown_keys(f, "fact", {"id", "name", "value", "common_property"});
            FactDef fd;
            fd.id = as_string(require(f, "id", "fact"), "fact.id");
            fd.name = as_string(require(f, "name", "fact"), "fact.name");
            fd.value = as_bool(require(f, "value", "fact"), "fact.value");
            if (f.contains("common_property"))
                fd.common_property = as_string(f["common_property"], "fact.common_property");
            cd.facts.push_back(std::move(fd));
        }
        if (c.contains("guard")) {
            for (const auto& g : as_array(c["guard"], "container.guard")) {
                reject_unknown_keys(g, "guard term", {"fact", "value"});
                cd.guard.push_back({as_string(require(g, "fact", "guard term"), "guard.fact"),
                                    as_bool(require(g, "value", "guard term"), "guard.value")});
            }
        }
        def.containers.push_back(std::move(cd));
    }

    if (doc.contains("links")) {
        for (const auto& l : as_array(doc["links"], "links")) {
            reject_unknown_keys(l, "link", {"id", "a", "b", "bidirectional"});
            LinkDef ld;
            ld.id = as_string(require(l, "id", "link"), "link.id");
            ld.a = as_string(require(l, "a", "link"), "link.a");
            ld.b = as_string(require(l, "b", "link"), "link.b");
            if (l.contains("bidirectional"))
                ld.bidirectional = as_bool(l["bidirectional"], "link.bidirectional");
            def.links.push_back(std::move(ld));
        }
    }

    if (doc.contains("rules")) {
        for (const auto& r : as_array(doc["rules"], "rules")) {
            reject_unknown_keys(r, "rule", {"id", "pre", "post"});
            RuleDef rd;
            rd.id = as_string(require(r, "id", "rule"), "rule.id");
            rd.pre = parse_conditions(require(r, "pre", "rule"), "rule.pre");
            rd.post = parse_conditions(require(r, "post", "rule"), "rule.post");
            def.rules.push_back(std::move(rd));
        }
    }

    if (doc.contains("generic_rules")) {
        for (const auto& g : as_array(doc["generic_rules"], "generic_rules")) {
            reject_unknown_keys(g, "generic rule", {"id", "pre", "post"});
            GenericRuleDef gd;
            gd.id = as_string(require(g, "id", "generic rule"), "generic_rule.id");
            gd.pre = parse_generic_conditions(require(g, "pre", "generic rule"), "generic_rule.pre");
            gd.post = parse_generic_conditions(require(g, "post", "generic rule"), "generic_rule.post");
            def.generic_rules.push_back(std::move(gd));
        }
    }

    def.ingress = as_string(require(doc, "ingress", "network document"), "ingress");
    def.egress = as_string(require(doc, "egress", "network document"), "egress");
    return def;
}

Network load_network(const std::string& text) {
    return Network(parse_network_document(text));
}

std::string serialize_network(const Network& net) {
    const NetworkDef& def = net.def();
    ordered_json doc;

    doc["containers"] = ordered_json::array();
    for (const auto& c : def.containers) {
        ordered_json jc;
        jc["id"] = c.id;
        jc["name"] = c.name;
        jc["facts"] = ordered_json::array();
        for (const auto& f : c.facts) {
            ordered_json jf;
            jf["id"] = f.id;
            jf["name"] = f.name;
            jf["value"] = f.value;
            if (!f.common_property.empty())
                jf["common_property"] = f.common_property;
            jc["facts"].push_back(std::move(jf));
        }
        if (!c.guard.empty()) {
            jc["guard"] = ordered_json::array();
            for (const auto& g : c.guard)
                jc["guard"].push_back({{"fact", g.fact}, {"value", g.value}});
        }
        doc["containers"].push_back(std::move(jc));
    }

    doc["links"] = ordered_json::array();
    for (const auto& l : def.links) {
        ordered_json jl;
        jl["id"] = l.id;
        jl["a"] = l.a;
        jl["b"] = l.b;
        jl["bidirectional"] = l.bidirectional;
        doc["links"].push_back(std::move(jl));
    }

    doc["rules"] = ordered_json::array();
    for (const auto& r : def.rules) {
        ordered_json jr;
        jr["id"] = r.id;
        jr["pre"] = ordered_json::array();
        for (const auto& c : r.pre)
            jr["pre"].push_back({{"fact", c.fact}, {"value", c.value}});
        jr["post"] = ordered_json::array();
        for (const auto& c : r.post)
            jr["post"].push_back({{"fact", c.fact}, {"value", c.value}});
        doc["rules"].push_back(std::move(jr));
    }

    doc["generic_rules"] = ordered_json::array();
    for (const auto& g : def.generic_rules) {
        ordered_json jg;
        jg["id"] = g.id;
        for (auto [conds, key] : {std::pair{&g.pre, "pre"}, std::pair{&g.post, "post"}}) {
            jg[key] = ordered_json::array();
            for (const auto& c : *conds)
                jg[key].push_back({{"role", c.role == Role::source ? "source" : "target"},
                                   {"property", c.property},
                                   {"value", c.value}});
        }
        doc["generic_rules"].push_back(std::move(jg));
    }

    doc["ingress"] = def.ingress;
    doc["egress"] = def.egress;
    return doc.dump(2) + "\n";
}

std::string export_result(const TraversalResult& result, const Network& net) {
    ordered_json doc;
    doc["attack_paths"] = ordered_json::array();
    for (const auto& path : result.attack_paths) {
        ordered_json jp = ordered_json::array();
        for (const auto& t : path.transitions()) {
            ordered_json jt;
            jt["container"] = net.container(t.to).id;
            jt["link"] = t.via_link ? ordered_json(net.link(*t.via_link).id) : ordered_json(nullptr);
            jt["rule"] = t.applied_rule ? ordered_json(result.rules[*t.applied_rule].id)
                                        : ordered_json(nullptr);
            jt["changed_facts"] = ordered_json::array();
            for (const auto& cf : t.changed_facts)
                jt["changed_facts"].push_back({{"fact", net.fact(cf.fact).id}, {"value", cf.value}});
            jp.push_back(std::move(jt));
        }
        doc["attack_paths"].push_back(std::move(jp));
    }
    doc["summary"] = {{"total_paths", result.total_paths_generated},
                      {"total_variants", result.total_variants_created},
                      {"expansions", result.expansions},
                      {"runtime_seconds", result.runtime_seconds},
                      {"termination", to_string(result.termination)}};
    return doc.dump(2) + "\n";
}

} // namespace bbnet
