#include "ephemera/bt.hpp"

#include <algorithm>

namespace ephemera::bt {
namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Node parse_tree() {
        Node root = parse_node();
        skip_spaces();
        if (pos_ != text_.size()) fail("trailing characters after tree");
        return root;
    }

private:
    [[noreturn]] void fail(std::string reason) const { throw ParseError(std::move(reason), pos_); }

    void skip_spaces() {
        while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
    }

    bool consume(std::string_view token) {
        skip_spaces();
        if (text_.substr(pos_).starts_with(token)) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    void expect(char ch) {
        skip_spaces();
        if (pos_ >= text_.size()) {
            fail(std::string("unbalanced parentheses: expected '") + ch + "' at end of input");
        }
        if (text_[pos_] != ch) fail(std::string("expected '") + ch + "'");
        ++pos_;
    }

    std::string_view identifier() {
        skip_spaces();
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               ((text_[pos_] >= 'A' && text_[pos_] <= 'Z') || (text_[pos_] >= 'a' && text_[pos_] <= 'z'))) {
            ++pos_;
        }
        return text_.substr(start, pos_ - start);
    }

    Color parse_color_token() {
        const std::size_t start = (skip_spaces(), pos_);
        const auto name = identifier();
        if (auto c = ephemera::parse_color(name)) return *c;
        pos_ = start;
        fail("unknown color name '" + std::string(name) + "'");
    }

    Node parse_node() {
        skip_spaces();
        const std::size_t start = pos_;
        const auto keyword = identifier();
        if (keyword.empty()) {
            if (pos_ >= text_.size()) fail("unexpected end of input");
            fail("unknown token");
        }
        if (keyword == "sel" || keyword == "seq") {
            expect('(');
            auto children = parse_list();
            expect(')');
            return keyword == "sel" ? selector(std::move(children)) : sequence(std::move(children));
        }
        if (keyword == "cond") {
            expect('(');
            Node n = condition(parse_predicate());
            expect(')');
            return n;
        }
        if (keyword == "act") {
            expect('(');
            Node n = action(parse_action());
            expect(')');
            return n;
        }
        pos_ = start;
        fail("unknown token '" + std::string(keyword) + "'");
    }

    std::vector<Node> parse_list() {
        skip_spaces();
        if (pos_ < text_.size() && text_[pos_] == ')') fail("empty child list");
        std::vector<Node> children;
        children.push_back(parse_node());
        while (consume(",")) children.push_back(parse_node());
        return children;
    }

    Predicate parse_predicate() {
        skip_spaces();
        const std::size_t start = pos_;
        const auto name = identifier();
        if (name == "SeeUnknownTarget") return SeeUnknownTarget{};
        if (name == "SeeTarget") {
            expect(':');
            return SeeTarget{parse_color_token()};
        }
        pos_ = start;
        fail("unknown predicate '" + std::string(name) + "'");
    }

    ActionKind parse_action() {
        skip_spaces();
        const std::size_t start = pos_;
        const auto name = identifier();
        if (name == "Query") return Query{};
        if (name == "Explore") return Explore{};
        if (name == "Collect") {
            expect(':');
            return Collect{parse_color_token()};
        }
        pos_ = start;
        fail("unknown action '" + std::string(name) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

void write(const Node& node, std::string& out) {
    std::visit(
        [&out](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Selector> || std::is_same_v<T, Sequence>) {
                out += std::is_same_v<T, Selector> ? "sel(" : "seq(";
                for (std::size_t i = 0; i < n.children.size(); ++i) {
                    if (i > 0) out += ',';
                    write(n.children[i], out);
                }
                out += ')';
            } else if constexpr (std::is_same_v<T, Condition>) {
                out += "cond(";
                if (const auto* see = std::get_if<SeeTarget>(&n.pred)) {
                    out += "SeeTarget:";
                    out += to_string(see->color);
                } else {
                    out += "SeeUnknownTarget";
                }
                out += ')';
            } else {
                out += "act(";
                if (const auto* collect = std::get_if<Collect>(&n.kind)) {
                    out += "Collect:";
                    out += to_string(collect->color);
                } else if (std::holds_alternative<Query>(n.kind)) {
                    out += "Query";
                } else {
                    out += "Explore";
                }
                out += ')';
            }
        },
        node.value);
}

bool evaluate(const Predicate& pred, const Blackboard& bb) {
    if (const auto* see = std::get_if<SeeTarget>(&pred)) return bb.perception.sees(see->color);
    return !(bb.perception.visible_colors() - bb.known_colors).empty();
}

Node query_branch() { return sequence({condition(SeeUnknownTarget{}), action(Query{})}); }

// Color of a knowledge subtree K(c), or nullopt if `n` is not one.
std::optional<Color> knowledge_color(const Node& n) {
    const auto* seq = std::get_if<Sequence>(&n.value);
    if (seq == nullptr || seq->children.size() != 2) return std::nullopt;
    const auto* cond = std::get_if<Condition>(&seq->children[0].value);
    const auto* act = std::get_if<Action>(&seq->children[1].value);
    if (cond == nullptr || act == nullptr) return std::nullopt;
    const auto* see = std::get_if<SeeTarget>(&cond->pred);
    const auto* collect = std::get_if<Collect>(&act->kind);
    if (see == nullptr || collect == nullptr || see->color != collect->color) return std::nullopt;
    return see->color;
}

// Known colors of a canonical agent tree, or nullopt if the shape is wrong.
std::optional<ColorSet> scan_agent_tree(const Node& root) {
    const auto* sel = std::get_if<Selector>(&root.value);
    if (sel == nullptr || sel->children.size() < 2) return std::nullopt;
    const auto& kids = sel->children;
    if (kids.back() != action(Explore{})) return std::nullopt;
    if (kids[kids.size() - 2] != query_branch()) return std::nullopt;
    ColorSet known;
    std::optional<Color> previous;
    for (std::size_t i = 0; i + 2 < kids.size(); ++i) {
        const auto c = knowledge_color(kids[i]);
        if (!c) return std::nullopt;
        if (previous && index_of(*c) <= index_of(*previous)) return std::nullopt;
        known.insert(*c);
        previous = c;
    }
    return known;
}

ColorSet require_agent_tree(const Node& root, const char* op) {
    auto known = scan_agent_tree(root);
    if (!known) throw ShapeError(std::string(op) + ": not a canonical agent tree: " + serialize(root));
    return *known;
}

}  // namespace

ParseError::ParseError(std::string reason, std::size_t offset)
    : std::runtime_error("BT parse error at byte " + std::to_string(offset) + ": " + reason),
      reason_(std::move(reason)),
      offset_(offset) {}

Node parse(std::string_view text) { return Parser(text).parse_tree(); }

std::string serialize(const Node& node) {
    std::string out;
    write(node, out);
    return out;
}

TickStatus tick(const Node& node, Blackboard& bb) {
    if (const auto* sel = std::get_if<Selector>(&node.value)) {
        for (const auto& child : sel->children) {
            if (tick(child, bb) == TickStatus::Success) return TickStatus::Success;
        }
        return TickStatus::Failure;
    }
    if (const auto* seq = std::get_if<Sequence>(&node.value)) {
        for (const auto& child : seq->children) {
            if (tick(child, bb) == TickStatus::Failure) return TickStatus::Failure;
        }
        return TickStatus::Success;
    }
    if (const auto* cond = std::get_if<Condition>(&node.value)) {
        return evaluate(cond->pred, bb) ? TickStatus::Success : TickStatus::Failure;
    }
    const auto& act = std::get<Action>(node.value);
    if (!bb.intent) bb.intent = act.kind;
    return TickStatus::Success;
}

Node make_knowledge_subtree(Color c) { return sequence({condition(SeeTarget{c}), action(Collect{c})}); }

Node assemble_agent_tree(ColorSet known) {
    std::vector<Node> children;
    children.reserve(known.size() + 2);
    for (Color c : known) children.push_back(make_knowledge_subtree(c));
    children.push_back(query_branch());
    children.push_back(action(Explore{}));
    return selector(std::move(children));
}

Node graft(const Node& root, Color c) {
    const ColorSet known = require_agent_tree(root, "graft");
    if (known.contains(c)) return root;
    Node result = root;
    auto& kids = std::get<Selector>(result.value).children;
    // Knowledge subtrees occupy the prefix in canonical order; insert before
    // the first subtree with a later color (or before the query branch).
    std::size_t at = 0;
    for (Color k : known) {
        if (index_of(k) > index_of(c)) break;
        ++at;
    }
    kids.insert(kids.begin() + static_cast<std::ptrdiff_t>(at), make_knowledge_subtree(c));
    return result;
}

Node prune(const Node& root, Color c) {
    const ColorSet known = require_agent_tree(root, "prune");
    if (!known.contains(c)) return root;
    Node result = root;
    auto& kids = std::get<Selector>(result.value).children;
    const auto it = std::find_if(kids.begin(), kids.end(), [c](const Node& n) { return knowledge_color(n) == c; });
    kids.erase(it);
    return result;
}

ColorSet known_colors(const Node& root) { return require_agent_tree(root, "known_colors"); }

bool is_agent_tree(const Node& root) { return scan_agent_tree(root).has_value(); }

}  // namespace ephemera::bt
