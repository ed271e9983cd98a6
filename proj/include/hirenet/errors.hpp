// Copyright (c) 2026 The HireNet Authors
// SPDX-License-Identifier: Apache-2.0
//
// Error taxonomy. Contract/validation failures and numeric failures are kept
// apart so the CLI can map them to distinct exit codes (2 and 3).

#pragma once

#include <stdexcept>
#include <string>

namespace hirenet {

// Violated precondition, shape mismatch, malformed input, degenerate input.
class ContractError : public std::runtime_error {
public:
    explicit ContractError(const std::string& msg) : std::runtime_error(msg) {}
};

// Empty sequence, all-false mask, empty score set: structurally valid but
// has no defined result.
class DegenerateInputError : public ContractError {
public:
    explicit DegenerateInputError(const std::string& msg) : ContractError(msg) {}
};

// Malformed file content; carries the line number when known.
class ParseError : public ContractError {
public:
    explicit ParseError(const std::string& msg) : ContractError(msg) {}
};

// Token id outside the embedding table, unknown checkpoint key, and similar.
class LookupError : public ContractError {
public:
    explicit LookupError(const std::string& msg) : ContractError(msg) {}
};

// NaN/Inf produced or encountered anywhere in a numeric pass.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hirenet
