#include "ftap/report_io.hpp"

#include "ftap/errors.hpp"
#include "ftap/tree_io.hpp"

namespace ftap {

using nlohmann::json;

namespace {

NodeId node_key(const std::string& key) {
    if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos)
        throw InputError("\"" + key + "\" is not a node id");
    return std::stoull(key);
}

const json& field(const json& doc, const char* key) {
    const auto it = doc.find(key);
    if (it == doc.end()) throw InputError(std::string("missing \"") + key + "\"");
    return *it;
}

}  // namespace

json certificate_to_json(NodeId node, const RiCertificate& cert) {
    json out;
    out["node"] = node;
    if (const auto* in = std::get_if<InRi>(&cert)) {
        out["verdict"] = "in_ri";
        out["weights"] = vector_to_json(in->weights);
    } else {
        out["verdict"] = "not_in_ri";
        out["direction"] = vector_to_json(std::get<NotInRi>(cert).direction);
    }
    return out;
}

NodeCertificate certificate_from_json(const json& doc) {
    NodeCertificate out;
    out.node = field(doc, "node").get<NodeId>();
    const auto verdict = field(doc, "verdict").get<std::string>();
    if (verdict == "in_ri") {
        out.certificate = InRi{vector_from_json(field(doc, "weights"), "weights")};
    } else if (verdict == "not_in_ri") {
        out.certificate = NotInRi{vector_from_json(field(doc, "direction"), "direction")};
    } else {
        throw InputError("unknown certificate verdict \"" + verdict + "\"");
    }
    return out;
}

json strategy_to_json(const Strategy& strategy) {
    json out = json::object();
    for (const auto& [node, gamma] : strategy) out[std::to_string(node)] = vector_to_json(gamma);
    return out;
}

Strategy strategy_from_json(const json& doc) {
    if (!doc.is_object()) throw InputError("strategy must be an object keyed by node id");
    Strategy out;
    for (const auto& [key, value] : doc.items()) out.emplace(node_key(key), vector_from_json(value, "strategy." + key));
    return out;
}

json density_to_json(const LeafDensity& density) {
    json out = json::object();
    for (const auto& [leaf, z] : density.values) out[std::to_string(leaf)] = rational_to_json(z);
    return out;
}

LeafDensity density_from_json(const json& doc) {
    if (!doc.is_object()) throw InputError("leaf density must be an object keyed by leaf id");
    LeafDensity out;
    for (const auto& [key, value] : doc.items()) {
        out.values.emplace(node_key(key), rational_from_json(value, "leaf_density." + key));
    }
    return out;
}

json emm_to_json(const EmmResult& emm) {
    json out;
    out["leaf_density"] = density_to_json(emm.density);
    out["bound"] = rational_to_json(emm.bound);
    json per_node = json::array();
    for (const auto& step : emm.per_node) {
        json entry;
        entry["node"] = step.node;
        entry["f"] = rational_to_json(step.scale);
        entry["children"] = step.children;
        entry["g"] = vector_to_json(step.g);
        entry["g_hat"] = vector_to_json(step.g_hat);
        per_node.push_back(std::move(entry));
    }
    out["per_node"] = std::move(per_node);
    return out;
}

EmmResult emm_from_json(const json& doc) {
    EmmResult out;
    out.density = density_from_json(field(doc, "leaf_density"));
    out.bound = rational_from_json(field(doc, "bound"), "bound");
    for (const auto& entry : field(doc, "per_node")) {
        OneStepDensity step;
        step.node = field(entry, "node").get<NodeId>();
        step.scale = rational_from_json(field(entry, "f"), "f");
        if (const auto it = entry.find("children"); it != entry.end()) step.children = it->get<std::vector<NodeId>>();
        step.g = vector_from_json(field(entry, "g"), "g");
        step.g_hat = vector_from_json(field(entry, "g_hat"), "g_hat");
        out.per_node.push_back(std::move(step));
    }
    return out;
}

json violations_to_json(const std::vector<Violation>& violations) {
    json out = json::array();
    for (const auto& v : violations) {
        json entry;
        entry["node"] = v.node ? json(*v.node) : json(nullptr);
        entry["rule"] = v.rule;
        entry["message"] = v.message;
        out.push_back(std::move(entry));
    }
    return out;
}

json report_to_json(const EquivalenceReport& report, std::optional<std::uint64_t> seed,
                    std::optional<double> elapsed_ms) {
    json out;
    out["verdicts"] = {{"no_arbitrage_strategy", report.verdict_na_strategy},
                       {"geometry", report.verdict_geometry},
                       {"emm", report.verdict_emm},
                       {"emm_oracle", report.verdict_emm_oracle}};
    out["consistent"] = report.consistent;
    out["arbitrage"] = report.arbitrage ? strategy_to_json(*report.arbitrage) : json(nullptr);
    out["local_arbitrage"] = report.local_arbitrage ? strategy_to_json(*report.local_arbitrage) : json(nullptr);
    out["failing_node"] = report.failing_node ? json(*report.failing_node) : json(nullptr);
    out["emm"] = report.emm ? emm_to_json(*report.emm) : json(nullptr);
    out["oracle_density"] = report.oracle_density ? density_to_json(*report.oracle_density) : json(nullptr);
    json certs = json::array();
    for (const auto& c : report.certificates) certs.push_back(certificate_to_json(c.node, c.certificate));
    out["certificates"] = std::move(certs);
    if (seed) out["seed"] = *seed;
    if (elapsed_ms) out["elapsed_ms"] = *elapsed_ms;
    return out;
}

}  // namespace ftap
