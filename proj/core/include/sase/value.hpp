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

#ifndef SASE_VALUE_HPP
#define SASE_VALUE_HPP

#include <charconv>
#include <map>
#include <string>
#include <variant>

namespace sase {

/// An attribute value: a real number for numeric attributes, a label for
/// categorical ones.
using Value = std::variant<double, std::string>;

using ValueMap = std::map<std::string, Value, std::less<>>;

inline bool is_number(const Value& v) { return std::holds_alternative<double>(v); }
inline bool is_label(const Value& v) { return std::holds_alternative<std::string>(v); }
inline double as_number(const Value& v) { return std::get<double>(v); }
inline const std::string& as_label(const Value& v) { return std::get<std::string>(v); }

/// Shortest decimal string that parses back to exactly the same double.
inline std::string format_double(double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

inline std::string value_to_string(const Value& v) {
    return is_number(v) ? format_double(as_number(v)) : as_label(v);
}

}  // namespace sase

#endif  // SASE_VALUE_HPP
