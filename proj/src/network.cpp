#include "bbnet/network.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

namespace bbnet {

namespace {

// Owning containers of every fact a rule touches, deduplicated.
std::set<std::string> rule_footprint(const RuleDef& rule,
                                     const std::unordered_map<std::string, std::string>& fact_owner) {
    std::set<std::string> owners;
    for (const auto* conds : {&rule.pre, &rule.post}) {
        for (const auto& c : *conds) {
            auto it = fact_owner.find(c.fact);
            if (it != fact_owner.end())
                owners.insert(it->second);
        }
    }
    return owners;
}

void check_condition_list(const std::string& rule_id, const char* side,
                          const std::vector<ConditionDef>& conds,
                          const std::unordered_map<std::string, std::string>& fact_owner,
                          std::vector<std::string>& out) {
    std::unordered_set<std::string> seen;
    for (const auto& c : conds) {
        if (!fact_owner.count(c.fact))
            out.push_back("rule \"" + rule_id + "\": unknown fact \"" + c.fact + "\"");
        if (!seen.insert(c.fact).second)
            out.push_back("rule \"" + rule_id + "\": fact \"" + c.fact + "\" appears twice in " + side);
    }
}

} // namespace

std::vector<std::string> validate_network(const NetworkDef& def) {
    std::vector<std::string> v;

    std::unordered_set<std::string> container_ids;
    for (const auto& c : def.containers) {
        if (!container_ids.insert(c.id).second)
            v.push_back("duplicate container id \"" + c.id + "\"");
    }

    std::unordered_map<std::string, std::string> fact_owner; // fact id -> container id
    std::unordered_set<std::string> properties;
    for (const auto& c : def.containers) {
        for (const auto& f : c.facts) {
            if (fact_owner.count(f.id))
                v.push_back("duplicate fact id \"" + f.id + "\"");
            else
                fact_owner.emplace(f.id, c.id);
            if (!f.common_property.empty())
                properties.insert(f.common_property);
        }
    }

    for (const auto& c : def.containers) {
        for (const auto& g : c.guard) {
            if (!fact_owner.count(g.fact))
                v.push_back("container \"" + c.id + "\": guard references unknown fact \"" + g.fact + "\"");
        }
    }

    std::unordered_set<std::string> link_ids;
    for (const auto& l : def.links) {
        if (!link_ids.insert(l.id).second)
            v.push_back("duplicate link id \"" + l.id + "\"");
        if (!container_ids.count(l.a))
            v.push_back("link \"" + l.id + "\": unknown container \"" + l.a + "\"");
        if (!container_ids.count(l.b))
            v.push_back("link \"" + l.id + "\": unknown container \"" + l.b + "\"");
        if (l.a == l.b)
            v.push_back("link \"" + l.id + "\": endpoints must differ");
    }

    std::unordered_set<std::string> rule_ids;
    for (const auto& r : def.rules) {
        if (!rule_ids.insert(r.id).second)
            v.push_back("duplicate rule id \"" + r.id + "\"");
        check_condition_list(r.id, "preconditions", r.pre, fact_owner, v);
        check_condition_list(r.id, "postconditions", r.post, fact_owner, v);
        auto owners = rule_footprint(r, fact_owner);
        if (owners.size() > 2) {
            std::ostringstream os;
            os << "rule \"" << r.id << "\": footprint spans " << owners.size() << " containers";
            v.push_back(os.str());
        }
    }

    std::unordered_set<std::string> generic_ids;
    for (const auto& g : def.generic_rules) {
        if (!generic_ids.insert(g.id).second)
            v.push_back("duplicate generic rule id \"" + g.id + "\"");
        for (const auto* conds : {&g.pre, &g.post}) {
            for (const auto& c : *conds) {
                if (!properties.count(c.property))
                    v.push_back("generic rule \"" + g.id + "\": unknown common property \"" + c.property + "\"");
            }
        }
    }

    if (!container_ids.count(def.ingress))
        v.push_back("ingress references unknown container \"" + def.ingress + "\"");
    if (!container_ids.count(def.egress))
        v.push_back("egress references unknown container \"" + def.egress + "\"");
    if (def.ingress == def.egress)
        v.push_back("ingress and egress must differ (both \"" + def.ingress + "\")");

    return v;
}

Network::Network(NetworkDef def) : def_(std::move(def)) {
    auto violations = validate_network(def_);
    if (!violations.empty()) {
        std::string msg = "invalid network:";
        for (const auto& s : violations)
            msg += "\n  " + s;
        throw ValidationError(msg);
    }

    containers_.reserve(def_.containers.size());
    for (const auto& cd : def_.containers) {
        Container c;
        c.id = cd.id;
        c.name = cd.name;
        container_by_id_.emplace(cd.id, static_cast<std::uint32_t>(containers_.size()));
        containers_.push_back(std::move(c));
    }

    for (std::uint32_t ci = 0; ci < containers_.size(); ++ci) {
        const auto& cd = def_.containers[ci];
        for (std::uint32_t slot = 0; slot < cd.facts.size(); ++slot) {
            const auto& fd = cd.facts[slot];
            Fact f;
            f.id = fd.id;
            f.name = fd.name;
            f.initial = fd.value;
            f.common_property = fd.common_property;
            f.owner = ci;
            f.slot = slot;
            fact_by_id_.emplace(fd.id, static_cast<std::uint32_t>(facts_.size()));
            containers_[ci].facts.push_back(static_cast<std::uint32_t>(facts_.size()));
            if (!fd.common_property.empty() &&
                std::find(common_properties_.begin(), common_properties_.end(),
                          fd.common_property) == common_properties_.end())
                common_properties_.push_back(fd.common_property);
            facts_.push_back(std::move(f));
        }
    }

    for (std::uint32_t ci = 0; ci < containers_.size(); ++ci) {
        for (const auto& gd : def_.containers[ci].guard)
            containers_[ci].guard.push_back({fact_by_id_.at(gd.fact), gd.value});
    }

    links_.reserve(def_.links.size());
    for (const auto& ld : def_.links) {
        Link l;
        l.id = ld.id;
        l.a = container_by_id_.at(ld.a);
        l.b = container_by_id_.at(ld.b);
        l.bidirectional = ld.bidirectional;
        link_by_id_.emplace(ld.id, static_cast<std::uint32_t>(links_.size()));
        links_.push_back(l);
    }

    for (std::uint32_t li = 0; li < links_.size(); ++li) {
        const Link& l = links_[li];
        containers_[l.a].incident.emplace_back(li, l.b);
        if (l.bidirectional)
            containers_[l.b].incident.emplace_back(li, l.a);
    }

    ingress_ = container_by_id_.at(def_.ingress);
    egress_ = container_by_id_.at(def_.egress);
}

std::uint32_t Network::container_index(std::string_view id) const {
    auto it = container_by_id_.find(std::string(id));
    if (it == container_by_id_.end())
        throw std::invalid_argument("unknown container id \"" + std::string(id) + "\"");
    return it->second;
}

std::uint32_t Network::fact_index(std::string_view id) const {
    auto it = fact_by_id_.find(std::string(id));
    if (it == fact_by_id_.end())
        throw std::invalid_argument("unknown fact id \"" + std::string(id) + "\"");
    return it->second;
}

std::uint32_t Network::link_index(std::string_view id) const {
    auto it = link_by_id_.find(std::string(id));
    if (it == link_by_id_.end())
        throw std::invalid_argument("unknown link id \"" + std::string(id) + "\"");
    return it->second;
}

namespace {

// First fact of the container carrying the given common property, if any.
std::optional<std::uint32_t> property_fact(const Network& net, std::uint32_t container,
                                           const std::string& property) {
    for (std::uint32_t fi : net.container(container).facts) {
        if (net.fact(fi).common_property == property)
            return fi;
    }
    return std::nullopt;
}

// Binds one generic rule to a concrete (source, target) container pair.
// Fails (nullopt) when either container lacks a referenced property.
std::optional<RuleDef> bind_generic(const Network& net, const GenericRuleDef& gen,
                                    std::uint32_t source, std::uint32_t target,
                                    const std::string& suffix) {
    RuleDef rule;
    rule.id = gen.id + suffix;
    for (auto [conds, out] :
         {std::pair{&gen.pre, &rule.pre}, std::pair{&gen.post, &rule.post}}) {
        for (const auto& c : *conds) {
            std::uint32_t holder = c.role == Role::source ? source : target;
            auto fi = property_fact(net, holder, c.property);
            if (!fi)
                return std::nullopt;
            out->push_back({net.fact(*fi).id, c.value});
        }
    }
    return rule;
}

} // namespace

std::vector<RuleDef> instantiate_generic_rules(const Network& net) {
    std::vector<RuleDef> out;
    for (const auto& gen : net.def().generic_rules) {
        for (std::uint32_t li = 0; li < net.link_count(); ++li) {
            const auto& l = net.link(li);
            if (auto r = bind_generic(net, gen, l.a, l.b, "@" + l.id + ":ab"))
                out.push_back(std::move(*r));
            if (l.bidirectional) {
                if (auto r = bind_generic(net, gen, l.b, l.a, "@" + l.id + ":ba"))
                    out.push_back(std::move(*r));
            }
        }
    }
    return out;
}

} // namespace bbnet
