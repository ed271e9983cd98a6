// Copyright (c) 2026 The HireNet Authors
// SPDX-License-Identifier: Apache-2.0
//
// The three pooling mechanisms over encoder states:
//   context attention: u_t = tanh(W_state h_t + W_ctx ctx + b), scores u.u_t
//   self attention:    same with the context term removed
//   average pooling:   masked mean (realized as attention over all-zero
//                      scores, so a zero u vector collapses to it bit-exactly)
// All three return a convex combination of the unmasked state rows.

#pragma once

#include <cstdint>
#include <vector>

#include "hirenet/graph.hpp"

namespace hirenet {

struct ContextAttentionParams {
    Tensor W_state;  // d_a x stateDim
    Tensor W_ctx;    // d_a x ctxDim
    Tensor b;        // d_a
    Tensor u;        // d_a

    size_t proj_dim() const { return W_state.rows(); }
    size_t state_dim() const { return W_state.cols(); }
    size_t ctx_dim() const { return W_ctx.cols(); }
    void validate(bool with_ctx) const;
};

struct AttentionResult {
    Value pooled;  // sum_t alpha_t h_t
    Value alphas;  // masked entries exactly 0, unmasked sum to 1
};

AttentionResult context_attention(Graph& g, Value states, const std::vector<uint8_t>& mask,
                                  Value ctx, ContextAttentionParams& params);

// Context attention with the W_ctx.ctx term dropped; W_ctx itself is unused.
AttentionResult self_attention(Graph& g, Value states, const std::vector<uint8_t>& mask,
                               ContextAttentionParams& params);

// Arithmetic mean of the unmasked rows.
AttentionResult average_pool(Graph& g, Value states, const std::vector<uint8_t>& mask);

// Per-pass attention record with the length-normalized values used for
// visualization: p_w = alpha_t * l per low-level step, p_q = alpha_i * n,
// combined = sqrt(p_q) * p_w.
struct AttentionTrace {
    std::vector<std::vector<double>> frame_alphas;    // per answer, unmasked steps
    std::vector<double> question_alphas;              // per QA pair
    std::vector<std::vector<double>> relative_word;   // p_w
    std::vector<double> relative_question;            // p_q
    std::vector<std::vector<double>> combined;        // sqrt(p_q) * p_w
    bool uniform = false;  // true for the averaging variant

    void validate() const;
};

// Fills in the relative/combined values from raw alphas.
AttentionTrace make_trace(std::vector<std::vector<double>> frame_alphas,
                          std::vector<double> question_alphas, bool uniform);

}  // namespace hirenet
