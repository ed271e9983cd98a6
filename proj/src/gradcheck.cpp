// Copyright (c) 2026 The HireNet Authors
// SPDX-License-Identifier: Apache-2.0

#include "hirenet/gradcheck.hpp"

#include <cmath>

namespace hirenet {

double grad_check(const ScalarFn& fn, const std::vector<Tensor*>& params, double eps,
                  double measurable_floor) {
    if (!(eps > 0.0)) throw ContractError("grad_check: eps must be positive");

    for (Tensor* p : params) p->zero_grad();
    {
        Graph g;
        Value loss = fn(g);
        if (!g.tensor_of(loss).is_scalar())
            throw ContractError("grad_check: function did not return a scalar");
        g.backward(loss);
    }
    std::vector<std::vector<double>> analytic;
    analytic.reserve(params.size());
    for (Tensor* p : params) analytic.push_back(p->grad());

    auto eval = [&]() {
        Graph g;
        const double v = g.scalar_of(fn(g));
        if (!std::isfinite(v)) throw NumericError("grad_check: non-finite function value");
        return v;
    };

    double worst = 0.0;
    for (size_t pi = 0; pi < params.size(); ++pi) {
        Tensor& t = *params[pi];
        for (size_t i = 0; i < t.size(); ++i) {
            const double saved = t.at(i);
            t.at(i) = saved + eps;
            const double fp = eval();
            t.at(i) = saved - eps;
            const double fm = eval();
            t.at(i) = saved;
            const double fd = (fp - fm) / (2.0 * eps);
            const double an = analytic[pi][i];
            if (std::fabs(an) + std::fabs(fd) < measurable_floor) {
                if (std::fabs(an - fd) > measurable_floor)
                    throw NumericError("grad_check: sub-floor coordinate disagrees with zero");
                continue;
            }
            const double err = std::fabs(an - fd) / std::max(1e-8, std::fabs(an) + std::fabs(fd));
            worst = std::max(worst, err);
        }
    }
    for (Tensor* p : params) p->drop_grad();
    return worst;
}

}  // namespace hirenet
