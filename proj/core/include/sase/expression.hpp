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

#ifndef SASE_EXPRESSION_HPP
#define SASE_EXPRESSION_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "sase/schema.hpp"

namespace sase {

/// Arithmetic over attribute values, used for derived metrics.
///
/// Grammar (left-associative, '*' '/' bind tighter than '+' '-'):
///   expr   := term (('+' | '-') term)*
///   term   := factor (('*' | '/') factor)*
///   factor := number | identifier | '(' expr ')' | func '(' expr (',' expr)* ')'
/// Functions: min, max, pow (binary), exp, log (unary), clamp (ternary).
/// Identifiers match [a-z][a-z0-9_]*; numbers are unsigned decimals with
/// optional fraction and exponent.
class Expression {
public:
    enum class NodeKind { Number, Reference, Binary, Call };
    enum class Builtin { Min, Max, Pow, Exp, Log, Clamp };

    struct Node {
        NodeKind kind = NodeKind::Number;
        double number = 0.0;
        std::string name;  // Reference
        char op = '+';     // Binary
        Builtin fn = Builtin::Min;
        std::vector<int> children;
        std::size_t pos = 0;  // byte offset in the source text
    };

    /// Parses `text`; throws ExprParseError with the offending offset.
    static Expression parse(std::string_view text);

    /// Evaluates under `bindings` (IEEE double arithmetic). Throws
    /// ExprEvalError for unbound identifiers, division by zero and log of
    /// a non-positive value, each pointing at the offending node.
    double evaluate(const ExtendedState& bindings) const;

    /// Canonical rendering; parse(to_string()) reproduces the same tree.
    std::string to_string() const;

    /// Names of all identifiers referenced by the expression.
    std::vector<std::string> references() const;

    const std::vector<Node>& nodes() const { return nodes_; }
    int root() const { return root_; }

private:
    std::vector<Node> nodes_;
    int root_ = -1;
};

}  // namespace sase

#endif  // SASE_EXPRESSION_HPP
