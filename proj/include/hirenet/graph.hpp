// Copyright (c) 2026 The HireNet Authors
// SPDX-License-Identifier: Apache-2.0
//
// Define-by-run computation graph with reverse-mode differentiation.
// A Graph is rebuilt per forward pass (sequences have variable length),
// owns every intermediate tensor, and is confined to one worker at a time.
// Parameter tensors live outside the graph; leaves bind to them and the
// backward pass accumulates into their grad buffers.
//
// Every op validates shapes on entry and re-checks its output for NaN/Inf:
// a non-finite value aborts the pass with a diagnostic naming the node.

#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hirenet/errors.hpp"
#include "hirenet/tensor.hpp"

namespace hirenet {

class Graph;

// Lightweight handle into a graph. Copyable, trivially cheap.
struct Value {
    Graph* graph = nullptr;
    int32_t index = -1;

    bool valid() const { return graph != nullptr && index >= 0; }
};

enum class OpKind : uint8_t {
    Leaf,        // differentiable parameter bound to an external tensor
    Input,       // non-differentiable data
    Affine,      // W x (+ b)
    Tanh,
    Sigmoid,
    Hadamard,
    Combine,     // c0 * x + c1 * y, elementwise (y optional)
    Concat,      // [x, y] along axis 0 (vectors)
    Slice,       // contiguous range of a vector
    RowSelect,   // row i of a matrix (embedding lookup)
    StackRows,   // matrix from a list of equal-length vectors
    StackScalars,
    Dot,         // scalar product of two vectors
    SoftmaxMasked,
    PoolRows,    // sum over unmasked t of alpha_t * row_t
    BceLoss,
    GruStep,     // fused gated-recurrence step, one node per timestep
    AttnScore,   // fused u . tanh(W h + c)
};

const char* op_kind_name(OpKind k);

class Graph {
public:
    Graph() = default;
    Graph(const Graph&) = delete;
    Graph& operator=(const Graph&) = delete;

    // --- graph construction -------------------------------------------------

    // Differentiable leaf over an external parameter tensor. The tensor must
    // outlive the graph; backward accumulates into its grad buffer.
    Value leaf(Tensor& param);

    // Non-differentiable input (features, labels, constants).
    Value input(Tensor data);

    // W: m x n, x: n, optional bias m. Accumulates sum_j W_ij x_j, bias last.
    Value affine(Value W, Value x, Value b);
    Value affine(Value W, Value x);

    Value tanh(Value x);
    Value sigmoid(Value x);
    Value hadamard(Value x, Value y);

    // c0 * x + c1 * y elementwise; scalars c0/c1 are constants of the graph.
    Value combine(double c0, Value x, double c1, Value y);
    Value scale(double c, Value x) { return combine(c, x, 0.0, x); }
    Value add(Value x, Value y) { return combine(1.0, x, 1.0, y); }
    Value sub(Value x, Value y) { return combine(1.0, x, -1.0, y); }

    Value concat(Value x, Value y);
    Value slice(Value x, size_t start, size_t len);
    Value row_select(Value matrix, size_t row);
    Value stack_rows(const std::vector<Value>& rows);
    Value stack_scalars(const std::vector<Value>& scalars);
    Value dot(Value x, Value y);

    // Masked entries come out exactly 0; the rest is a stabilized softmax
    // over unmasked scores. Requires at least one unmasked entry.
    Value softmax_masked(Value scores, const std::vector<uint8_t>& mask);

    // pooled = sum over unmasked t of alphas[t] * states.row(t).
    Value pool_rows(Value states, Value alphas, const std::vector<uint8_t>& mask);

    // Binary cross-entropy against a fixed 0/1 label; the score is clamped
    // to [1e-12, 1 - 1e-12] before the logs.
    Value bce_loss(Value score, int label);

    // One gated-recurrence step as a single node:
    //   z = sigmoid(Wz x + Uz h + bz); r = sigmoid(Wr x + Ur h + br)
    //   htilde = tanh(Wh x + Uh (r .* h) + bh); out = (1-z) .* h + z .* htilde
    Value gru_step_fused(Value x, Value h_prev, Value Wz, Value Wr, Value Wh, Value Uz, Value Ur,
                         Value Uh, Value bz, Value br, Value bh);

    // Additive-attention score u . tanh(W h + c) as a single scalar node;
    // c carries the context projection (or just the bias).
    Value attn_score(Value W, Value h, Value c, Value u);

    // --- generic dispatch ---------------------------------------------------

    // Applies a primitive by kind tag. Covers the elementwise/structural ops;
    // masked/loss ops carry extra arguments and keep their named entry points.
    Value primitive_apply(OpKind kind, const std::vector<Value>& inputs);

    // --- evaluation ---------------------------------------------------------

    // References stay valid for the graph's lifetime (node storage never
    // relocates).
    const Tensor& tensor_of(Value v) const;
    double scalar_of(Value v) const { return tensor_of(v).scalar_value(); }

    // Reverse-mode pass from a scalar root. Seeds d(loss)/d(loss) = 1 and
    // adds (never overwrites) into every reachable leaf parameter's grad.
    // Repeated calls without zeroing grads accumulate.
    void backward(Value loss);

    size_t node_count() const { return nodes_.size(); }

private:
    struct Node {
        OpKind kind;
        bool requires_grad = false;       // false: no differentiable ancestor
        std::vector<int32_t> ins;
        Tensor out;
        Tensor* bound = nullptr;          // Leaf only
        double c0 = 0.0, c1 = 0.0;        // Combine coefficients
        int32_t row = -1;                 // RowSelect index / Slice start / BCE label
        int32_t len = -1;                 // Slice length
        std::vector<uint8_t> mask;        // SoftmaxMasked / PoolRows
        std::vector<std::vector<double>> stash;  // fused ops: saved activations
    };

    std::deque<Node> nodes_;

    Value push(Node n);
    Node& node(Value v);
    const Node& node(Value v) const;
    void check_same_graph(Value v) const;
    void check_finite(const Tensor& t, OpKind kind, size_t idx) const;
    void backward_node(Node& n);
};

// Collects dLoss/dParam for every named parameter after backward().
// Parameters never touched by the graph come back as zero tensors.
std::map<std::string, Tensor> gradient_map(
    const std::vector<std::pair<std::string, Tensor*>>& params);

}  // namespace hirenet
