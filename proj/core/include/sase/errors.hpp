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

#ifndef SASE_ERRORS_HPP
#define SASE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sase {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller broke an operation's contract (e.g. a solution assigning a
/// non-controllable attribute, or selecting from an empty frame).
class ContractError : public Error {
public:
    using Error::Error;
};

/// A schema definition itself is invalid.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// Version or schema-fingerprint mismatch between a document and the
/// schema it is being used with.
class CompatError : public Error {
public:
    using Error::Error;
};

/// A malformed document (knowledge base, scenario, request).
class FormatError : public Error {
public:
    using Error::Error;
};

/// Unusable configuration: no positively weighted attribute, no
/// controllable attribute, and similar.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Referenced entity does not exist (e.g. revising an unknown case id).
class NotFoundError : public Error {
public:
    using Error::Error;
};

/// Not enough observations to estimate from.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// Operation not defined for the given attribute kind.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// Expression syntax error; `offset` is the byte position in the source.
class ExprParseError : public Error {
public:
    ExprParseError(const std::string& what, std::size_t offset)
        : Error(what + " (at offset " + std::to_string(offset) + ")"), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_ = 0;
};

/// Expression evaluation error; `offset` points at the offending node.
class ExprEvalError : public Error {
public:
    ExprEvalError(const std::string& what, std::size_t offset)
        : Error(what + " (at offset " + std::to_string(offset) + ")"), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_ = 0;
};

}  // namespace sase

#endif  // SASE_ERRORS_HPP
