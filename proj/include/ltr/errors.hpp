// SPDX-License-Identifier: BSD-3-Clause
// Copyright (c) 2026 ltr authors

#pragma once

#include <stdexcept>
#include <string>

namespace ltr {

/// A caller broke an operation's precondition.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// The grasp mapping has no feasible configuration for an object pose.
class NoGraspConfig : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Query on an empty nearest-neighbour index.
class QueryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Scenario document failed to parse (names the offending field).
class ScenarioParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Scenario parsed but violates an invariant.
class ScenarioValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Benchmark CSV does not match the expected column layout.
class CsvSchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
    if (!cond) {
        throw ContractViolation(what);
    }
}

}  // namespace ltr
