#pragma once

#include "ftap/market.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace ftap {

/// A tree as stored on disk; `seed` is present for generated trees.
struct TreeDocument {
    ScenarioTree tree;
    std::optional<std::uint64_t> seed;
};

/// Parses {"d", "N", "nodes": [{"id", "parent", "prob", "price"}], "seed"?}.
/// Rationals are "p/q" strings (JSON integers are accepted too). Structural
/// JSON problems throw InputError; semantic ones end up in tree.violations().
TreeDocument parse_tree(const nlohmann::json& doc);
TreeDocument parse_tree_text(const std::string& text);
TreeDocument read_tree_file(const std::string& path);

nlohmann::json tree_to_json(const ScenarioTree& tree, std::optional<std::uint64_t> seed = std::nullopt);

nlohmann::json rational_to_json(const Rational& value);
Rational rational_from_json(const nlohmann::json& value, const std::string& where);
nlohmann::json vector_to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& value, const std::string& where);

}  // namespace ftap
