#include "ftap/tree_io.hpp"

#include "ftap/errors.hpp"

#include <fstream>
#include <sstream>

namespace ftap {

using nlohmann::json;

nlohmann::json rational_to_json(const Rational& value) { return to_string(value); }

Rational rational_from_json(const json& value, const std::string& where) {
    if (value.is_string()) {
        try {
            return parse_rational(value.get<std::string>());
        } catch (const InputError& e) {
            throw InputError(where + ": " + e.what());
        }
    }
    if (value.is_number_integer()) {
        return value.is_number_unsigned() ? Rational(std::to_string(value.get<std::uint64_t>()))
                                          : Rational(std::to_string(value.get<std::int64_t>()));
    }
    throw InputError(where + ": expected a rational string such as \"3/4\"");
}

json vector_to_json(const Vector& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(rational_to_json(x));
    return out;
}

Vector vector_from_json(const json& value, const std::string& where) {
    if (!value.is_array()) throw InputError(where + ": expected an array of rationals");
    Vector out;
    for (std::size_t i = 0; i < value.size(); ++i) {
        out.push_back(rational_from_json(value[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

namespace {

std::uint64_t unsigned_field(const json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw InputError(where + ": missing \"" + key + "\"");
    if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<std::int64_t>() >= 0))
        throw InputError(where + ": \"" + key + "\" must be a non-negative integer");
    return it->get<std::uint64_t>();
}

}  // namespace

TreeDocument parse_tree(const json& doc) {
    if (!doc.is_object()) throw InputError("tree document must be a JSON object");
    const auto d = unsigned_field(doc, "d", "tree");
    const auto horizon = unsigned_field(doc, "N", "tree");
    const auto nodes_it = doc.find("nodes");
    if (nodes_it == doc.end() || !nodes_it->is_array()) throw InputError("tree: \"nodes\" must be an array");

    std::vector<NodeSpec> nodes;
    for (std::size_t i = 0; i < nodes_it->size(); ++i) {
        const auto& entry = (*nodes_it)[i];
        const std::string where = "nodes[" + std::to_string(i) + "]";
        if (!entry.is_object()) throw InputError(where + ": expected an object");
        NodeSpec node;
        node.id = unsigned_field(entry, "id", where);
        const std::string node_where = where + " (id " + std::to_string(node.id) + ")";
        const auto parent = entry.find("parent");
        if (parent == entry.end()) throw InputError(node_where + ": missing \"parent\" (use null for the root)");
        if (!parent->is_null()) node.parent = unsigned_field(entry, "parent", node_where);
        const auto prob = entry.find("prob");
        if (prob == entry.end()) throw InputError(node_where + ": missing \"prob\"");
        node.prob = rational_from_json(*prob, node_where + ".prob");
        const auto price = entry.find("price");
        if (price == entry.end()) throw InputError(node_where + ": missing \"price\"");
        node.price = vector_from_json(*price, node_where + ".price");
        nodes.push_back(std::move(node));
    }

    TreeDocument out{ScenarioTree(d, horizon, std::move(nodes)), std::nullopt};
    if (const auto seed = doc.find("seed"); seed != doc.end() && !seed->is_null()) {
        out.seed = unsigned_field(doc, "seed", "tree");
    }
    return out;
}

TreeDocument parse_tree_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    return parse_tree(doc);
}

TreeDocument read_tree_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_tree_text(buffer.str());
}

json tree_to_json(const ScenarioTree& tree, std::optional<std::uint64_t> seed) {
    json out;
    out["d"] = tree.assets();
    out["N"] = tree.horizon();
    json nodes = json::array();
    for (const auto& node : tree.nodes()) {
        json entry;
        entry["id"] = node.id;
        entry["parent"] = node.parent ? json(*node.parent) : json(nullptr);
        entry["prob"] = rational_to_json(node.prob);
        entry["price"] = vector_to_json(node.price);
        nodes.push_back(std::move(entry));
    }
    out["nodes"] = std::move(nodes);
    if (seed) out["seed"] = *seed;
    return out;
}

}  // namespace ftap
