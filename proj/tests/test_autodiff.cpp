// Copyright (c) 2026 The HireNet Authors
// SPDX-License-Identifier: Apache-2.0
//
// Graph primitives: forward values against hand-computed or closed-form
// oracles, masked softmax contracts, reverse-mode gradients against
// central finite differences.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "hirenet/gradcheck.hpp"
#include "hirenet/graph.hpp"
#include "hirenet/rng.hpp"

using namespace hirenet;

namespace {

Tensor rand_vec(Rng& rng, size_t n, double lo = -1.0, double hi = 1.0) {
    Tensor t = Tensor::vector(n);
    for (size_t i = 0; i < n; ++i) t.at(i) = rng.uniform(lo, hi);
    return t;
}

Tensor rand_mat(Rng& rng, size_t r, size_t c, double lo = -1.0, double hi = 1.0) {
    Tensor t = Tensor::matrix(r, c);
    for (size_t i = 0; i < t.size(); ++i) t.at(i) = rng.uniform(lo, hi);
    return t;
}

}  // namespace

TEST_CASE("affine: identity matrix passes input through") {
    Graph g;
    Tensor W = Tensor::matrix(2, 2, {1, 0, 0, 1});
    Tensor b = Tensor::vector(2, 0.0);
    Tensor x = Tensor::vector({7.0, -1.0});
    Value out = g.affine(g.leaf(W), g.input(x), g.leaf(b));
    CHECK(g.tensor_of(out).at(0) == 7.0);
    CHECK(g.tensor_of(out).at(1) == -1.0);
}

TEST_CASE("affine: hand matrix-multiply oracle") {
    // W = [[1,2],[3,4]], x = (1,1), b = (0,1) -> (3, 8)
    Graph g;
    Tensor W = Tensor::matrix(2, 2, {1, 2, 3, 4});
    Tensor b = Tensor::vector({0.0, 1.0});
    Tensor x = Tensor::vector({1.0, 1.0});
    Value out = g.affine(g.leaf(W), g.input(x), g.leaf(b));
    CHECK(g.tensor_of(out).at(0) == doctest::Approx(3.0));
    CHECK(g.tensor_of(out).at(1) == doctest::Approx(8.0));
}

TEST_CASE("affine: shape mismatch names both shapes") {
    Graph g;
    Tensor W = Tensor::matrix(2, 3);
    Tensor x = Tensor::vector(2);
    CHECK_THROWS_AS(g.affine(g.leaf(W), g.input(x)), ContractError);
    try {
        g.affine(g.leaf(W), g.input(x));
    } catch (const ContractError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("[2,3]") != std::string::npos);
        CHECK(msg.find("[2]") != std::string::npos);
    }
}

TEST_CASE("sigmoid(0) = 0.5 and tanh(0) = 0") {
    Graph g;
    Tensor x = Tensor::vector({0.0});
    CHECK(g.tensor_of(g.sigmoid(g.input(x))).at(0) == 0.5);
    CHECK(g.tensor_of(g.tanh(g.input(x))).at(0) == 0.0);
}

TEST_CASE("non-finite input is rejected with the node name") {
    Graph g;
    Tensor big = Tensor::vector({710.0});  // exp overflows to inf
    Value e = g.input(big);
    // sigmoid(-710) underflow is fine; exp(710) inside sigmoid(x) is 1/(1+exp(-x)), use tanh path
    CHECK_THROWS_AS(g.input(Tensor::vector({std::nan("")})), NumericError);
    (void)e;
}

TEST_CASE("softmax_masked: single element, symmetry, exp ratio") {
    Graph g;
    {
        Value out = g.softmax_masked(g.input(Tensor::vector({3.7})), {1});
        CHECK(g.tensor_of(out).at(0) == 1.0);
    }
    {
        Value out = g.softmax_masked(g.input(Tensor::vector({0.0, 0.0, 0.0})), {1, 1, 1});
        for (size_t i = 0; i < 3; ++i)
            CHECK(g.tensor_of(out).at(i) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    }
    {
        Value out = g.softmax_masked(g.input(Tensor::vector({std::log(2.0), 0.0})), {1, 1});
        CHECK(g.tensor_of(out).at(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
        CHECK(g.tensor_of(out).at(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    }
}

TEST_CASE("softmax_masked: masked entry is exactly zero, rest match exp ratios") {
    Graph g;
    Value out = g.softmax_masked(g.input(Tensor::vector({5.0, 9.0, 1.0})), {1, 1, 0});
    const double e5 = std::exp(5.0), e9 = std::exp(9.0);
    CHECK(g.tensor_of(out).at(0) == doctest::Approx(e5 / (e5 + e9)).epsilon(1e-12));
    CHECK(g.tensor_of(out).at(1) == doctest::Approx(e9 / (e5 + e9)).epsilon(1e-12));
    CHECK(g.tensor_of(out).at(2) == 0.0);
}

TEST_CASE("softmax_masked: all-false mask is degenerate") {
    Graph g;
    CHECK_THROWS_AS(g.softmax_masked(g.input(Tensor::vector({1.0, 2.0})), {0, 0}),
                    DegenerateInputError);
}

TEST_CASE("softmax_masked properties: sum, shift invariance, non-negativity") {
    Rng rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        const size_t n = 1 + rng.uniform_index(8);
        Tensor scores = rand_vec(rng, n, -30.0, 30.0);
        std::vector<uint8_t> mask(n, 0);
        const size_t live = 1 + rng.uniform_index(n);
        for (size_t i = 0; i < live; ++i) mask[i] = 1;

        Graph g;
        const Tensor& out = g.tensor_of(g.softmax_masked(g.input(scores), mask));
        double sum = 0.0;
        for (size_t i = 0; i < n; ++i) {
            CHECK(out.at(i) >= 0.0);
            if (!mask[i]) CHECK(out.at(i) == 0.0);
            sum += out.at(i);
        }
        CHECK(std::fabs(sum - 1.0) <= 1e-12);

        // adding a constant to all unmasked scores leaves the result unchanged
        const double shift = rng.uniform(-5.0, 5.0);
        Tensor shifted = scores;
        for (size_t i = 0; i < n; ++i)
            if (mask[i]) shifted.at(i) += shift;
        Graph g2;
        const Tensor& out2 = g2.tensor_of(g2.softmax_masked(g2.input(shifted), mask));
        for (size_t i = 0; i < n; ++i) CHECK(out.at(i) == doctest::Approx(out2.at(i)).epsilon(1e-12));
    }
}

TEST_CASE("backward: sigma'(0) = 0.25 and tanh'(0) = 1") {
    {
        Graph g;
        Tensor x = Tensor::vector({0.0});
        Value loss = g.sigmoid(g.leaf(x));
        g.backward(loss);
        CHECK(x.grad()[0] == doctest::Approx(0.25));
    }
    {
        Graph g;
        Tensor x = Tensor::vector({0.0});
        Value loss = g.tanh(g.leaf(x));
        g.backward(loss);
        CHECK(x.grad()[0] == doctest::Approx(1.0));
    }
}

TEST_CASE("backward: BCE(sigmoid(z), y) gradient is sigmoid(z) - y") {
    Tensor z = Tensor::vector({0.3});
    auto fn = [&](Graph& g) { return g.bce_loss(g.sigmoid(g.leaf(z)), 1); };

    Graph g;
    Value loss = fn(g);
    g.backward(loss);
    const double sig = 1.0 / (1.0 + std::exp(-0.3));
    CHECK(z.grad()[0] == doctest::Approx(sig - 1.0).epsilon(1e-12));

    // the same value via central differences
    z.drop_grad();
    CHECK(grad_check(fn, {&z}, 1e-5) < 1e-7);
}

TEST_CASE("backward: non-scalar root is a contract violation") {
    Graph g;
    Tensor x = Tensor::vector({1.0, 2.0});
    Value v = g.tanh(g.leaf(x));
    CHECK_THROWS_AS(g.backward(v), ContractError);
}

TEST_CASE("backward: unreachable parameters keep zero grads") {
    Tensor x = Tensor::vector({0.5});
    Tensor unused = Tensor::vector({2.0});
    Graph g;
    Value loss = g.sigmoid(g.leaf(x));
    (void)g.leaf(unused);
    x.zero_grad();
    unused.zero_grad();
    g.backward(loss);
    CHECK(unused.grad()[0] == 0.0);
    CHECK(x.grad()[0] != 0.0);
}

TEST_CASE("backward: repeated calls accumulate into parameter grads") {
    Tensor x = Tensor::vector({0.7});
    Graph g;
    Value loss = g.sigmoid(g.leaf(x));
    x.zero_grad();
    g.backward(loss);
    const double once = x.grad()[0];
    g.backward(loss);
    CHECK(x.grad()[0] == doctest::Approx(2.0 * once).epsilon(1e-12));
}

TEST_CASE("backward linearity: grad of summed losses equals sum of grads") {
    Rng rng(7);
    Tensor x = rand_vec(rng, 3);
    Tensor W = rand_mat(rng, 3, 3);

    auto loss_a = [&](Graph& g, Value xs) { return g.dot(g.tanh(xs), g.tanh(xs)); };
    auto loss_b = [&](Graph& g, Value xs) {
        return g.dot(g.sigmoid(g.affine(g.leaf(W), xs)), g.sigmoid(xs));
    };

    // separate gradient maps
    x.zero_grad();
    W.zero_grad();
    {
        Graph g;
        g.backward(loss_a(g, g.leaf(x)));
    }
    std::vector<double> ga_x = x.grad();
    x.zero_grad();
    {
        Graph g;
        g.backward(loss_b(g, g.leaf(x)));
    }
    std::vector<double> gb_x = x.grad();

    x.zero_grad();
    W.zero_grad();
    {
        Graph g;
        Value xs = g.leaf(x);
        g.backward(g.add(loss_a(g, xs), loss_b(g, xs)));
    }
    for (size_t i = 0; i < x.size(); ++i)
        CHECK(x.grad()[i] == doctest::Approx(ga_x[i] + gb_x[i]).epsilon(1e-12));
}

TEST_CASE("forward evaluation is deterministic bit for bit") {
    Rng rng(11);
    Tensor W = rand_mat(rng, 4, 4);
    Tensor x = rand_vec(rng, 4);
    auto run = [&]() {
        Graph g;
        return g.tensor_of(g.tanh(g.affine(g.leaf(W), g.leaf(x)))).values();
    };
    CHECK(run() == run());
}

TEST_CASE("grad_check: f(x) = x^2 at x = 3 and sigmoid at 0") {
    Tensor x = Tensor::vector({3.0});
    CHECK(grad_check([&](Graph& g) { Value v = g.leaf(x); return g.dot(v, v); }, {&x}, 1e-5) <
          1e-7);
    Tensor z = Tensor::vector({0.0});
    CHECK(grad_check([&](Graph& g) { return g.sigmoid(g.leaf(z)); }, {&z}, 1e-5) < 1e-7);
}

TEST_CASE("grad_check: every primitive over 100 random parameterizations") {
    Rng rng(1234);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const size_t m = 1 + rng.uniform_index(4);
        const size_t k = 1 + rng.uniform_index(4);
        Tensor W = rand_mat(rng, m, k);
        Tensor x = rand_vec(rng, k);
        Tensor b = rand_vec(rng, m);
        Tensor y = rand_vec(rng, m);
        Tensor s = rand_vec(rng, m, -3.0, 3.0);
        std::vector<uint8_t> mask(m, 0);
        const size_t live = 1 + rng.uniform_index(m);
        for (size_t i = 0; i < live; ++i) mask[i] = 1;
        const int label = static_cast<int>(rng.uniform_index(2));

        // affine + tanh + dot
        worst = std::max(worst, grad_check(
            [&](Graph& g) {
                return g.dot(g.tanh(g.affine(g.leaf(W), g.leaf(x), g.leaf(b))), g.leaf(y));
            },
            {&W, &x, &b, &y}, 1e-5));
        // sigmoid + hadamard + combine
        worst = std::max(worst, grad_check(
            [&](Graph& g) {
                Value p = g.hadamard(g.sigmoid(g.leaf(y)), g.leaf(b));
                Value c = g.combine(0.75, p, -1.25, g.leaf(y));
                return g.dot(c, c);
            },
            {&y, &b}, 1e-5));
        // concat + slice
        worst = std::max(worst, grad_check(
            [&](Graph& g) {
                Value c = g.concat(g.leaf(x), g.leaf(b));
                Value sl = g.slice(c, 0, k);
                return g.dot(sl, g.leaf(x));
            },
            {&x, &b}, 1e-5));
        // row select + stack + pooling through masked softmax
        worst = std::max(worst, grad_check(
            [&](Graph& g) {
                Value Wl = g.leaf(W);
                std::vector<Value> rows;
                for (size_t r = 0; r < m; ++r) rows.push_back(g.tanh(g.row_select(Wl, r)));
                Value states = g.stack_rows(rows);
                Value alphas = g.softmax_masked(g.leaf(s), mask);
                Value pooled = g.pool_rows(states, alphas, mask);
                return g.dot(pooled, pooled);
            },
            {&W, &s}, 1e-5));
        // bce over a squashed score
        worst = std::max(worst, grad_check(
            [&](Graph& g) {
                Value score = g.sigmoid(g.dot(g.leaf(x), g.leaf(x)));
                return g.bce_loss(score, label);
            },
            {&x}, 1e-5));
    }
    CHECK(worst < 1e-4);
}

TEST_CASE("primitive_apply dispatches by kind") {
    Graph g;
    Tensor a = Tensor::vector({1.0, 2.0});
    Tensor b = Tensor::vector({3.0, 5.0});
    Value va = g.leaf(a), vb = g.leaf(b);
    CHECK(g.tensor_of(g.primitive_apply(OpKind::Hadamard, {va, vb})).at(1) == 10.0);
    CHECK(g.tensor_of(g.primitive_apply(OpKind::Combine, {va, vb})).at(0) == 4.0);
    CHECK(g.tensor_of(g.primitive_apply(OpKind::Dot, {va, vb})).scalar_value() == 13.0);
    CHECK_THROWS_AS(g.primitive_apply(OpKind::Tanh, {va, vb}), ContractError);
}

TEST_CASE("bce_loss rejects labels outside {0,1}") {
    Graph g;
    Value s = g.input(Tensor::scalar(0.5));
    CHECK_THROWS_AS(g.bce_loss(s, 2), ContractError);
}
