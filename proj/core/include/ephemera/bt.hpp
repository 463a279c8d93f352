#pragma once

/// @file bt.hpp
/// @brief Behavior-tree model for agent knowledge.
///
/// A tree is a value: composites own their children, leaves are closed
/// vocabularies (see Predicate and ActionKind). Ticks are memoryless: an
/// Action posts an intent to the blackboard and succeeds, so every iteration
/// re-evaluates from the root.
///
/// Text form (canonical output has no whitespace; parse tolerates spaces):
///
///     node   := "sel(" list ")" | "seq(" list ")" | "cond(" pred ")" | "act(" action ")"
///     list   := node ("," node)*
///     pred   := "SeeTarget:" color | "SeeUnknownTarget"
///     action := "Collect:" color | "Query" | "Explore"
///     color  := "Red" | "Green" | "Yellow" | "Blue"
///
/// An *agent tree* has the canonical shape
///
///     sel(K(c1), ..., K(cn), seq(cond(SeeUnknownTarget),act(Query)), act(Explore))
///
/// where K(c) = seq(cond(SeeTarget:c),act(Collect:c)) and c1 < ... < cn in
/// canonical color order. graft/prune/known_colors require that shape.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ephemera/color.hpp"
#include "ephemera/perception.hpp"

namespace ephemera::bt {

struct SeeTarget {
    Color color;
    bool operator==(const SeeTarget&) const = default;
};
struct SeeUnknownTarget {
    bool operator==(const SeeUnknownTarget&) const = default;
};
using Predicate = std::variant<SeeTarget, SeeUnknownTarget>;

struct Collect {
    Color color;
    bool operator==(const Collect&) const = default;
};
struct Query {
    bool operator==(const Query&) const = default;
};
struct Explore {
    bool operator==(const Explore&) const = default;
};
using ActionKind = std::variant<Collect, Query, Explore>;

struct Node;

struct Selector {
    std::vector<Node> children;
    friend bool operator==(const Selector&, const Selector&) = default;
};
struct Sequence {
    std::vector<Node> children;
    friend bool operator==(const Sequence&, const Sequence&) = default;
};
struct Condition {
    Predicate pred;
    friend bool operator==(const Condition&, const Condition&) = default;
};
struct Action {
    ActionKind kind;
    friend bool operator==(const Action&, const Action&) = default;
};

struct Node {
    std::variant<Selector, Sequence, Condition, Action> value;
    friend bool operator==(const Node&, const Node&) = default;
};

enum class TickStatus { Success, Failure };

struct Blackboard {
    const Perception& perception;
    ColorSet known_colors;
    std::optional<ActionKind> intent;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::string reason, std::size_t offset);
    std::size_t offset() const noexcept { return offset_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::string reason_;
    std::size_t offset_;
};

/// Raised by the agent-tree editors when the input is not canonical-shaped.
class ShapeError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

Node parse(std::string_view text);
std::string serialize(const Node& node);

TickStatus tick(const Node& node, Blackboard& bb);

Node make_knowledge_subtree(Color c);
Node assemble_agent_tree(ColorSet known);
Node graft(const Node& root, Color c);
Node prune(const Node& root, Color c);
ColorSet known_colors(const Node& root);

/// True when `root` has the canonical agent-tree shape.
bool is_agent_tree(const Node& root);

// Node construction shorthands.
inline Node selector(std::vector<Node> children) { return Node{Selector{std::move(children)}}; }
inline Node sequence(std::vector<Node> children) { return Node{Sequence{std::move(children)}}; }
inline Node condition(Predicate p) { return Node{Condition{p}}; }
inline Node action(ActionKind k) { return Node{Action{k}}; }

}  // namespace ephemera::bt
