// Copyright (c) 2026 The HireNet Authors
// SPDX-License-Identifier: Apache-2.0
//
// GRU cell and sequence encoders. Convention used throughout:
//   z = sigmoid(W_z x + U_z h + b_z)          update gate
//   r = sigmoid(W_r x + U_r h + b_r)          reset gate
//   htilde = tanh(W_h x + U_h (r .* h) + b_h)
//   h' = (1 - z) .* h + z .* htilde
// Sequences are suffix-padded: the mask is a contiguous true-prefix and
// masked steps copy the previous state, so padding never changes any
// unmasked row or the last state.

#pragma once

#include <cstdint>
#include <vector>

#include "hirenet/graph.hpp"

namespace hirenet {

struct GRUCellParams {
    Tensor W_z, W_r, W_h;  // hidden x input
    Tensor U_z, U_r, U_h;  // hidden x hidden
    Tensor b_z, b_r, b_h;  // hidden

    size_t hidden_dim() const { return W_z.rows(); }
    size_t input_dim() const { return W_z.cols(); }
    void validate() const;
};

struct BiGRUParams {
    GRUCellParams forward;
    GRUCellParams backward;

    size_t hidden_dim() const { return forward.hidden_dim(); }
    size_t input_dim() const { return forward.input_dim(); }
    void validate() const;
};

// One variable-length sequence: features row t is x_t, the mask is a
// contiguous true-prefix of length true_length.
struct SequenceBatchItem {
    Tensor features;  // length x featureDim
    std::vector<uint8_t> mask;
    size_t true_length = 0;

    static SequenceBatchItem from_features(Tensor features, size_t true_length);
    static SequenceBatchItem full(Tensor features);  // no padding
    void validate() const;
};

// Parameter leaves bound once per graph so every step shares them.
struct GruCellRef {
    Value W_z, W_r, W_h, U_z, U_r, U_h, b_z, b_r, b_h;
};
GruCellRef bind_cell(Graph& g, GRUCellParams& p);

// One recurrence step. h_prev components in [-1,1] keep h_t in (-1,1)
// (the output is a coordinate-wise convex combination of h_prev and htilde).
Value gru_step(Graph& g, const GruCellRef& cell, Value x_t, Value h_prev);
Value gru_step(Graph& g, GRUCellParams& params, Value x_t, Value h_prev);

struct GruRunResult {
    Value states;                  // length x hidden, masked rows copy the last real state
    Value last;                    // state at true_length - 1
    std::vector<Value> state_rows;
};

// Runs the cell over the unmasked prefix; h0 defaults to zero.
GruRunResult gru_run(Graph& g, GRUCellParams& params, const SequenceBatchItem& seq);
GruRunResult gru_run(Graph& g, GRUCellParams& params, const SequenceBatchItem& seq, Value h0);

// Row t = [forward state t, backward state t]; the backward direction
// consumes only unmasked steps in reverse order.
Value bigru_run(Graph& g, BiGRUParams& params, const SequenceBatchItem& seq);

// Same recurrence over already-built graph rows (differentiable inputs);
// rows at t >= true_length repeat the last real row.
Value bigru_over_rows(Graph& g, BiGRUParams& params, const std::vector<Value>& rows,
                      size_t true_length);

// Embeds the token ids, runs a forward GRU, returns the last hidden state.
Value encode_token_sequence(Graph& g, Tensor& embedding, GRUCellParams& cell,
                            const std::vector<int>& tokens);

}  // namespace hirenet
