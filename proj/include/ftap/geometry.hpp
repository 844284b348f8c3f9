#pragma once

#include "ftap/linalg.hpp"
#include "ftap/market.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ftap {

/// Strictly positive convex weights with Σ λ_i x_i = 0.
struct InRi {
    std::vector<Rational> weights;
};

/// h in span(atoms), (h, x_i) ≥ 0 for all atoms, > 0 for at least one,
/// max_j |h_j| = 1.
struct NotInRi {
    Vector direction;
};

using RiCertificate = std::variant<InRi, NotInRi>;

inline bool contains_origin(const RiCertificate& cert) { return std::holds_alternative<InRi>(cert); }

/// Decides whether 0 lies in the relative interior of conv(atoms), relative to
/// their linear span. Throws InputError on an empty atom list.
RiCertificate ri_conv_contains_origin(const std::vector<Vector>& atoms);

/// Raw optimum of: maximize Σ_i (h, x_i) s.t. (h, x_i) ≥ 0, h ∈ span(atoms),
/// |h_j| ≤ 1. `direction` is the optimal h before normalization.
struct DirectionLp {
    Rational optimum;
    Vector direction;
};
DirectionLp solve_direction_lp(const std::vector<Vector>& atoms);

/// One-step arbitrage direction when the origin is not in the relative
/// interior, normalized to max-norm 1; nothing otherwise.
std::optional<Vector> arbitrage_direction(const std::vector<Vector>& atoms);

/// Exact re-check of a certificate against its atoms; empty string when valid.
std::string check_certificate(const std::vector<Vector>& atoms, const RiCertificate& cert);

/// A node fails the relative-interior condition.
class GeometryError : public std::runtime_error {
public:
    GeometryError(NodeId node, NotInRi certificate, const std::string& what)
        : std::runtime_error(what), node_(node), certificate_(std::move(certificate)) {}

    NodeId node() const { return node_; }
    const NotInRi& certificate() const { return certificate_; }

private:
    NodeId node_;
    NotInRi certificate_;
};

/// Throws GeometryError carrying the node's direction; `context` prefixes the message.
[[noreturn]] void throw_geometry_error(const ConditionalSupport& support, const std::string& context);

/// Strategy that trades only at `node` with the given direction (zero elsewhere).
Strategy one_step_strategy(const ScenarioTree& tree, NodeId node, const Vector& direction);

}  // namespace ftap
