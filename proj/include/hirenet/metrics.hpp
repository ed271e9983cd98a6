// Copyright (c) 2026 The HireNet Authors
// SPDX-License-Identifier: Apache-2.0
//
// Precision / recall / F1 of the positive (hirable) class.

#pragma once

#include <cstddef>
#include <vector>

namespace hirenet {

struct Metrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    size_t tp = 0, fp = 0, fn = 0, tn = 0;
};

// Zero-denominator cases (no positive predictions, no positive labels,
// P + R == 0) come out as 0.
Metrics compute_metrics(const std::vector<int>& predictions, const std::vector<int>& labels);

}  // namespace hirenet
