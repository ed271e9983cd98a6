// Copyright (c) 2026 The HireNet Authors
// SPDX-License-Identifier: Apache-2.0

#include "hirenet/encoders.hpp"

#include <string>

namespace hirenet {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ContractError(msg);
}

}  // namespace

void GRUCellParams::validate() const {
    const size_t h = W_z.rows(), in = W_z.cols();
    require(h > 0 && in > 0, "gru cell: empty dimensions");
    for (const Tensor* m : {&W_r, &W_h})
        require(m->rank() == 2 && m->rows() == h && m->cols() == in,
                "gru cell: W matrices disagree on shape");
    for (const Tensor* m : {&U_z, &U_r, &U_h})
        require(m->rank() == 2 && m->rows() == h && m->cols() == h,
                "gru cell: U matrices must be hidden x hidden");
    for (const Tensor* v : {&b_z, &b_r, &b_h})
        require(v->rank() == 1 && v->size() == h, "gru cell: bias length must equal hidden dim");
}

void BiGRUParams::validate() const {
    forward.validate();
    backward.validate();
    require(forward.hidden_dim() == backward.hidden_dim() &&
                forward.input_dim() == backward.input_dim(),
            "bigru: directions disagree on dimensions");
}

SequenceBatchItem SequenceBatchItem::from_features(Tensor features, size_t true_length) {
    SequenceBatchItem item;
    require(features.rank() == 2, "sequence item: features must be a matrix");
    item.mask.assign(features.rows(), 0);
    for (size_t t = 0; t < true_length && t < item.mask.size(); ++t) item.mask[t] = 1;
    item.true_length = true_length;
    item.features = std::move(features);
    item.validate();
    return item;
}

SequenceBatchItem SequenceBatchItem::full(Tensor features) {
    const size_t len = features.rows();
    return from_features(std::move(features), len);
}

void SequenceBatchItem::validate() const {
    require(features.rank() == 2, "sequence item: features must be a matrix");
    require(mask.size() == features.rows(), "sequence item: mask length != row count");
    size_t count = 0;
    bool in_prefix = true;
    for (uint8_t m : mask) {
        if (m) {
            require(in_prefix, "sequence item: mask is not a contiguous prefix");
            ++count;
        } else {
            in_prefix = false;
        }
    }
    require(count == true_length, "sequence item: true_length != mask count");
    require(features.all_finite(), "sequence item: non-finite feature value");
}

GruCellRef bind_cell(Graph& g, GRUCellParams& p) {
    p.validate();
    return GruCellRef{g.leaf(p.W_z), g.leaf(p.W_r), g.leaf(p.W_h),
                      g.leaf(p.U_z), g.leaf(p.U_r), g.leaf(p.U_h),
                      g.leaf(p.b_z), g.leaf(p.b_r), g.leaf(p.b_h)};
}

Value gru_step(Graph& g, const GruCellRef& c, Value x_t, Value h_prev) {
    return g.gru_step_fused(x_t, h_prev, c.W_z, c.W_r, c.W_h, c.U_z, c.U_r, c.U_h, c.b_z, c.b_r,
                            c.b_h);
}

Value gru_step(Graph& g, GRUCellParams& params, Value x_t, Value h_prev) {
    return gru_step(g, bind_cell(g, params), x_t, h_prev);
}

namespace {

GruRunResult run_direction(Graph& g, const GruCellRef& cell, const std::vector<Value>& inputs,
                           size_t true_length, Value h0) {
    GruRunResult res;
    Value h = h0;
    res.state_rows.reserve(inputs.size());
    for (size_t t = 0; t < inputs.size(); ++t) {
        if (t < true_length) h = gru_step(g, cell, inputs[t], h);
        res.state_rows.push_back(h);  // masked steps copy the previous state
    }
    res.states = g.stack_rows(res.state_rows);
    res.last = res.state_rows[true_length - 1];
    return res;
}

std::vector<Value> feature_rows(Graph& g, const SequenceBatchItem& seq) {
    Value features = g.input(seq.features);
    std::vector<Value> rows;
    rows.reserve(seq.features.rows());
    for (size_t t = 0; t < seq.features.rows(); ++t) rows.push_back(g.row_select(features, t));
    return rows;
}

}  // namespace

GruRunResult gru_run(Graph& g, GRUCellParams& params, const SequenceBatchItem& seq, Value h0) {
    seq.validate();
    params.validate();
    if (seq.true_length == 0) throw DegenerateInputError("gru_run: empty sequence");
    if (seq.features.cols() != params.input_dim())
        throw ContractError("gru_run: feature dim " + std::to_string(seq.features.cols()) +
                            " != cell input dim " + std::to_string(params.input_dim()));
    GruCellRef cell = bind_cell(g, params);
    return run_direction(g, cell, feature_rows(g, seq), seq.true_length, h0);
}

GruRunResult gru_run(Graph& g, GRUCellParams& params, const SequenceBatchItem& seq) {
    Value h0 = g.input(Tensor::vector(params.hidden_dim(), 0.0));
    return gru_run(g, params, seq, h0);
}

Value bigru_over_rows(Graph& g, BiGRUParams& params, const std::vector<Value>& rows,
                      size_t true_length) {
    params.validate();
    if (true_length == 0) throw DegenerateInputError("bigru: empty sequence");
    if (true_length > rows.size()) throw ContractError("bigru: true_length exceeds row count");

    const size_t len = rows.size();
    const size_t L = true_length;
    GruCellRef fcell = bind_cell(g, params.forward);
    GruCellRef bcell = bind_cell(g, params.backward);
    Value zero = g.input(Tensor::vector(params.hidden_dim(), 0.0));

    std::vector<Value> fwd(L), bwd(L);
    Value h = zero;
    for (size_t t = 0; t < L; ++t) {
        h = gru_step(g, fcell, rows[t], h);
        fwd[t] = h;
    }
    h = zero;
    for (size_t t = L; t-- > 0;) {
        h = gru_step(g, bcell, rows[t], h);
        bwd[t] = h;
    }

    std::vector<Value> out_rows(len);
    for (size_t t = 0; t < L; ++t) out_rows[t] = g.concat(fwd[t], bwd[t]);
    for (size_t t = L; t < len; ++t) out_rows[t] = out_rows[L - 1];
    return g.stack_rows(out_rows);
}

Value bigru_run(Graph& g, BiGRUParams& params, const SequenceBatchItem& seq) {
    seq.validate();
    params.validate();
    if (seq.true_length == 0) throw DegenerateInputError("bigru_run: empty sequence");
    if (seq.features.cols() != params.input_dim())
        throw ContractError("bigru_run: feature dim mismatch");
    return bigru_over_rows(g, params, feature_rows(g, seq), seq.true_length);
}

Value encode_token_sequence(Graph& g, Tensor& embedding, GRUCellParams& cell,
                            const std::vector<int>& tokens) {
    if (tokens.empty()) throw DegenerateInputError("encode_token_sequence: no tokens");
    if (embedding.rank() != 2) throw ContractError("encode_token_sequence: embedding not a matrix");
    cell.validate();
    if (embedding.cols() != cell.input_dim())
        throw ContractError("encode_token_sequence: embedding dim != cell input dim");
    const size_t vocab = embedding.rows();
    for (int id : tokens)
        if (id < 0 || static_cast<size_t>(id) >= vocab)
            throw LookupError("encode_token_sequence: token id " + std::to_string(id) +
                              " outside vocabulary of size " + std::to_string(vocab));

    Value table = g.leaf(embedding);
    GruCellRef c = bind_cell(g, cell);
    Value h = g.input(Tensor::vector(cell.hidden_dim(), 0.0));
    for (int id : tokens) h = gru_step(g, c, g.row_select(table, static_cast<size_t>(id)), h);
    return h;
}

}  // namespace hirenet
