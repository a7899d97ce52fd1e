#pragma once

#include <string>

#include "bbnet/network.hpp"
#include "bbnet/traversal.hpp"

namespace bbnet {

// Parses a network document without validating cross-references. Throws
// ParseError on malformed JSON, wrong types, or unknown keys.
NetworkDef parse_network_document(const std::string& text);

// Parses and validates. Throws ParseError or ValidationError.
Network load_network(const std::string& text);

// Emits the document form of a network. load_network(serialize_network(n))
// yields a structurally equal network.
std::string serialize_network(const Network& net);

// Result document: one entry per attack path, each an array of
// {container, link, rule, changed_facts}, plus a summary block.
std::string export_result(const TraversalResult& result, const Network& net);

} // namespace bbnet
