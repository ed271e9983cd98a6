// Copyright (c) 2026 The HireNet Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

namespace hirenet {

// Whole-file atomic write: temp file in the same directory, then rename.
void atomic_write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace hirenet
