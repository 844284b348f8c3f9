#pragma once

#include "ftap/market.hpp"

#include <initializer_list>
#include <utility>
#include <vector>

namespace ftap::testing {

/// One-period, one-asset tree from (increment, probability) pairs; root price 0.
inline ScenarioTree one_step_tree(const std::vector<std::pair<Rational, Rational>>& branches) {
    std::vector<NodeSpec> nodes{{0, std::nullopt, Rational(1), {Rational(0)}}};
    for (std::size_t i = 0; i < branches.size(); ++i) {
        nodes.push_back({i + 1, NodeId{0}, branches[i].second, {branches[i].first}});
    }
    return ScenarioTree(1, 1, std::move(nodes));
}

/// Non-recombining ±1 tree with probability 1/2 on each branch; ids breadth first.
inline ScenarioTree symmetric_binomial(std::size_t horizon) {
    std::vector<NodeSpec> nodes{{0, std::nullopt, Rational(1), {Rational(0)}}};
    for (std::size_t i = 0; nodes.size() < (std::size_t{1} << (horizon + 1)) - 1; ++i) {
        for (int step : {1, -1}) nodes.push_back({nodes.size(), i, Rational(1, 2), {nodes[i].price[0] + step}});
    }
    return ScenarioTree(1, horizon, std::move(nodes));
}

/// Two periods, the ±1 step with up-probability `up` at every node.
inline ScenarioTree two_step_tree(const Rational& up) {
    const Rational down = 1 - up;
    return ScenarioTree(1, 2,
                        {{0, std::nullopt, Rational(1), {Rational(0)}},
                         {1, NodeId{0}, up, {Rational(1)}},
                         {2, NodeId{0}, down, {Rational(-1)}},
                         {3, NodeId{1}, up, {Rational(2)}},
                         {4, NodeId{1}, down, {Rational(0)}},
                         {5, NodeId{2}, up, {Rational(0)}},
                         {6, NodeId{2}, down, {Rational(-2)}}});
}

inline ConditionalSupport atoms_1d(std::initializer_list<std::pair<long, Rational>> atoms) {
    std::vector<Atom> out;
    for (const auto& [x, q] : atoms) out.push_back({{Rational(x)}, q});
    return ConditionalSupport::from_atoms(std::move(out));
}

}  // namespace ftap::testing
