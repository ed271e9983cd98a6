// Copyright (c) 2026 The HireNet Authors
// SPDX-License-Identifier: Apache-2.0
//
// Central finite-difference verification of reverse-mode gradients.

#pragma once

#include <functional>
#include <vector>

#include "hirenet/graph.hpp"

namespace hirenet {

// Builds a scalar function fresh from the current parameter values. The
// callable must be deterministic and must route every parameter it reads
// through Graph::leaf on the given tensors.
using ScalarFn = std::function<Value(Graph&)>;

// Returns max over all parameter coordinates of
//   |analytic - centralFD| / max(1e-8, |analytic| + |centralFD|)
// with centralFD = (f(x+eps) - f(x-eps)) / (2 eps).
//
// measurable_floor guards deep compositions: central differences of a
// function of magnitude ~1 carry round-off noise of roughly ulp(f)/(2 eps)
// (~2.5e-11 at eps = 1e-5), so a coordinate whose true gradient sits below
// that cannot be measured to any relative precision. Coordinates with
// |analytic| + |centralFD| < measurable_floor are instead required to agree
// with zero to measurable_floor and contribute no relative error. The
// default 0 disables the guard.
double grad_check(const ScalarFn& fn, const std::vector<Tensor*>& params, double eps,
                  double measurable_floor = 0.0);

}  // namespace hirenet
