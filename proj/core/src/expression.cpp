// Copyright 2026 The sase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sase/expression.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

#include "sase/errors.hpp"

namespace sase {

namespace {

struct BuiltinInfo {
    std::string_view name;
    Expression::Builtin fn;
    std::size_t arity;
};

constexpr BuiltinInfo kBuiltins[] = {
    {"min", Expression::Builtin::Min, 2},   {"max", Expression::Builtin::Max, 2},
    {"pow", Expression::Builtin::Pow, 2},   {"exp", Expression::Builtin::Exp, 1},
    {"log", Expression::Builtin::Log, 1},   {"clamp", Expression::Builtin::Clamp, 3},
};

const BuiltinInfo* find_builtin(std::string_view name) {
    for (const auto& b : kBuiltins)
        if (b.name == name) return &b;
    return nullptr;
}

std::string_view builtin_name(Expression::Builtin fn) {
    for (const auto& b : kBuiltins)
        if (b.fn == fn) return b.name;
    return "?";
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    int parse_all() {
        const int root = parse_expr();
        skip_space();
        if (pos_ != text_.size())
            throw ExprParseError("unexpected trailing input", pos_);
        return root;
    }

    std::vector<Expression::Node> take_nodes() { return std::move(nodes_); }

private:
    void skip_space() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                       text_[pos_] == '\n' || text_[pos_] == '\r'))
            ++pos_;
    }

    bool peek_is(char c) {
        skip_space();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool consume(char c) {
        if (peek_is(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    int add(Expression::Node node) {
        nodes_.push_back(std::move(node));
        return static_cast<int>(nodes_.size() - 1);
    }

    int parse_expr() {
        int left = parse_term();
        while (true) {
            skip_space();
            if (pos_ >= text_.size()) break;
            const char c = text_[pos_];
            if (c != '+' && c != '-') break;
            const std::size_t op_pos = pos_++;
            const int right = parse_term();
            Expression::Node n;
            n.kind = Expression::NodeKind::Binary;
            n.op = c;
            n.children = {left, right};
            n.pos = op_pos;
            left = add(std::move(n));
        }
        return left;
    }

    int parse_term() {
        int left = parse_factor();
        while (true) {
            skip_space();
            if (pos_ >= text_.size()) break;
            const char c = text_[pos_];
            if (c != '*' && c != '/') break;
            const std::size_t op_pos = pos_++;
            const int right = parse_factor();
            Expression::Node n;
            n.kind = Expression::NodeKind::Binary;
            n.op = c;
            n.children = {left, right};
            n.pos = op_pos;
            left = add(std::move(n));
        }
        return left;
    }

    int parse_factor() {
        skip_space();
        if (pos_ >= text_.size()) throw ExprParseError("unexpected end of input", pos_);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            const int inner = parse_expr();
            if (!consume(')')) throw ExprParseError("expected ')'", pos_);
            return inner;
        }
        if (c >= '0' && c <= '9') return parse_number();
        if (c >= 'a' && c <= 'z') return parse_identifier_or_call();
        throw ExprParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    int parse_number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            if (pos_ >= text_.size() || text_[pos_] < '0' || text_[pos_] > '9')
                throw ExprParseError("expected digits after '.'", pos_);
            while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ >= text_.size() || text_[pos_] < '0' || text_[pos_] > '9')
                throw ExprParseError("expected exponent digits", pos_);
            while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
        }
        double value = 0.0;
        const auto [ptr, ec] =
            std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc() || ptr != text_.data() + pos_)
            throw ExprParseError("invalid number literal", start);
        Expression::Node n;
        n.kind = Expression::NodeKind::Number;
        n.number = value;
        n.pos = start;
        return add(std::move(n));
    }

    int parse_identifier_or_call() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               ((text_[pos_] >= 'a' && text_[pos_] <= 'z') ||
                (text_[pos_] >= '0' && text_[pos_] <= '9') || text_[pos_] == '_'))
            ++pos_;
        const std::string name(text_.substr(start, pos_ - start));
        if (peek_is('(')) {
            const BuiltinInfo* builtin = find_builtin(name);
            if (!builtin) throw ExprParseError("unknown function '" + name + "'", start);
            ++pos_;  // '('
            std::vector<int> args;
            args.push_back(parse_expr());
            while (consume(',')) args.push_back(parse_expr());
            if (!consume(')')) throw ExprParseError("expected ')'", pos_);
            if (args.size() != builtin->arity)
                throw ExprParseError("function '" + name + "' expects " +
                                         std::to_string(builtin->arity) + " arguments, got " +
                                         std::to_string(args.size()),
                                     start);
            Expression::Node n;
            n.kind = Expression::NodeKind::Call;
            n.fn = builtin->fn;
            n.children = std::move(args);
            n.pos = start;
            return add(std::move(n));
        }
        Expression::Node n;
        n.kind = Expression::NodeKind::Reference;
        n.name = name;
        n.pos = start;
        return add(std::move(n));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::vector<Expression::Node> nodes_;
};

int precedence(const Expression::Node& n) {
    if (n.kind != Expression::NodeKind::Binary) return 3;
    return (n.op == '*' || n.op == '/') ? 2 : 1;
}

}  // namespace

Expression Expression::parse(std::string_view text) {
    Parser p(text);
    Expression e;
    e.root_ = p.parse_all();
    e.nodes_ = p.take_nodes();
    return e;
}

double Expression::evaluate(const ExtendedState& bindings) const {
    struct Eval {
        const std::vector<Node>& nodes;
        const ExtendedState& bindings;

        double run(int index) const {
            const Node& n = nodes[static_cast<std::size_t>(index)];
            switch (n.kind) {
                case NodeKind::Number:
                    return n.number;
                case NodeKind::Reference: {
                    auto it = bindings.find(n.name);
                    if (it == bindings.end())
                        throw ExprEvalError("unbound identifier '" + n.name + "'", n.pos);
                    if (!is_number(it->second))
                        throw ExprEvalError("identifier '" + n.name + "' is not numeric", n.pos);
                    return as_number(it->second);
                }
                case NodeKind::Binary: {
                    const double a = run(n.children[0]);
                    const double b = run(n.children[1]);
                    switch (n.op) {
                        case '+': return a + b;
                        case '-': return a - b;
                        case '*': return a * b;
                        case '/':
                            if (b == 0.0) throw ExprEvalError("division by zero", n.pos);
                            return a / b;
                    }
                    throw ExprEvalError("unknown operator", n.pos);
                }
                case NodeKind::Call: {
                    switch (n.fn) {
                        case Builtin::Min:
                            return std::min(run(n.children[0]), run(n.children[1]));
                        case Builtin::Max:
                            return std::max(run(n.children[0]), run(n.children[1]));
                        case Builtin::Pow:
                            return std::pow(run(n.children[0]), run(n.children[1]));
                        case Builtin::Exp:
                            return std::exp(run(n.children[0]));
                        case Builtin::Log: {
                            const double x = run(n.children[0]);
                            if (!(x > 0.0))
                                throw ExprEvalError("log of non-positive value", n.pos);
                            return std::log(x);
                        }
                        case Builtin::Clamp: {
                            const double x = run(n.children[0]);
                            const double lo = run(n.children[1]);
                            const double hi = run(n.children[2]);
                            return std::min(std::max(x, lo), hi);
                        }
                    }
                    throw ExprEvalError("unknown function", n.pos);
                }
            }
            throw ExprEvalError("corrupt expression node", n.pos);
        }
    };
    if (root_ < 0) throw ExprEvalError("empty expression", 0);
    return Eval{nodes_, bindings}.run(root_);
}

std::string Expression::to_string() const {
    struct Printer {
        const std::vector<Node>& nodes;

        std::string run(int index) const {
            const Node& n = nodes[static_cast<std::size_t>(index)];
            switch (n.kind) {
                case NodeKind::Number:
                    return format_double(n.number);
                case NodeKind::Reference:
                    return n.name;
                case NodeKind::Binary: {
                    const Node& lhs = nodes[static_cast<std::size_t>(n.children[0])];
                    const Node& rhs = nodes[static_cast<std::size_t>(n.children[1])];
                    std::string left = run(n.children[0]);
                    std::string right = run(n.children[1]);
                    // Parenthesize when the child binds looser, or equally
                    // on the right (operators are left-associative).
                    if (precedence(lhs) < precedence(n)) left = "(" + left + ")";
                    if (precedence(rhs) < precedence(n) ||
                        (precedence(rhs) == precedence(n) &&
                         rhs.kind == NodeKind::Binary))
                        right = "(" + right + ")";
                    return left + " " + n.op + " " + right;
                }
                case NodeKind::Call: {
                    std::string out(builtin_name(n.fn));
                    out += "(";
                    for (std::size_t i = 0; i < n.children.size(); ++i) {
                        if (i) out += ", ";
                        out += run(n.children[i]);
                    }
                    out += ")";
                    return out;
                }
            }
            return "?";
        }
    };
    if (root_ < 0) return "";
    return Printer{nodes_}.run(root_);
}

std::vector<std::string> Expression::references() const {
    std::set<std::string> names;
    for (const auto& n : nodes_)
        if (n.kind == NodeKind::Reference) names.insert(n.name);
    return {names.begin(), names.end()};
}

}  // namespace sase
