#pragma once

#include "ftap/emm.hpp"
#include "ftap/geometry.hpp"
#include "ftap/market.hpp"
#include "ftap/verify.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>

namespace ftap {

/// {"node": 3, "verdict": "not_in_ri", "direction": [...]} or
/// {"node": 3, "verdict": "in_ri", "weights": [...]}.
nlohmann::json certificate_to_json(NodeId node, const RiCertificate& cert);
NodeCertificate certificate_from_json(const nlohmann::json& doc);

/// {"<node id>": ["γ_1", ...], ...}
nlohmann::json strategy_to_json(const Strategy& strategy);
Strategy strategy_from_json(const nlohmann::json& doc);

/// {"<leaf id>": "z", ...}
nlohmann::json density_to_json(const LeafDensity& density);
LeafDensity density_from_json(const nlohmann::json& doc);

/// {"leaf_density": {...}, "bound": "2", "per_node": [{"node", "f", "children", "g", "g_hat"}]}
nlohmann::json emm_to_json(const EmmResult& emm);
EmmResult emm_from_json(const nlohmann::json& doc);

nlohmann::json violations_to_json(const std::vector<Violation>& violations);

/// Verdicts, witnesses and certificates. `seed` and `elapsed_ms` are included
/// only when given, so output without them is byte-stable.
nlohmann::json report_to_json(const EquivalenceReport& report, std::optional<std::uint64_t> seed = std::nullopt,
                              std::optional<double> elapsed_ms = std::nullopt);

}  // namespace ftap
