// Copyright (c) 2026 The HireNet Authors
// SPDX-License-Identifier: Apache-2.0
//
// Versioned checkpoint files: a format-version string, the full config,
// then every parameter under its canonical dotted name with shape and
// row-major values. Loading validates the whole dimension chain.

#pragma once

#include <string>

#include "hirenet/model.hpp"

namespace hirenet {

inline constexpr const char* kCheckpointVersion = "hirenet-checkpoint/1";

void save_checkpoint(const std::string& path, const HireNetConfig& config,
                     HireNetParams& params);

struct LoadedModel {
    HireNetConfig config;
    HireNetParams params;
};

LoadedModel load_checkpoint(const std::string& path);

// Config <-> JSON text (also used for CLI config files).
std::string config_to_json(const HireNetConfig& config);
HireNetConfig config_from_json(const std::string& text);

}  // namespace hirenet
