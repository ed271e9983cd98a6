// Copyright (c) 2026 The HireNet Authors
// SPDX-License-Identifier: Apache-2.0

#include "hirenet/graph.hpp"

#include <algorithm>
#include <cmath>

namespace hirenet {

const char* op_kind_name(OpKind k) {
    switch (k) {
        case OpKind::Leaf: return "leaf";
        case OpKind::Input: return "input";
        case OpKind::Affine: return "affine";
        case OpKind::Tanh: return "tanh";
        case OpKind::Sigmoid: return "sigmoid";
        case OpKind::Hadamard: return "hadamard";
        case OpKind::Combine: return "combine";
        case OpKind::Concat: return "concat";
        case OpKind::Slice: return "slice";
        case OpKind::RowSelect: return "row_select";
        case OpKind::StackRows: return "stack_rows";
        case OpKind::StackScalars: return "stack_scalars";
        case OpKind::Dot: return "dot";
        case OpKind::SoftmaxMasked: return "softmax_masked";
        case OpKind::PoolRows: return "pool_rows";
        case OpKind::BceLoss: return "bce_loss";
        case OpKind::GruStep: return "gru_step";
        case OpKind::AttnScore: return "attn_score";
    }
    return "?";
}

Value Graph::push(Node n) {
    if (n.kind == OpKind::Leaf) {
        n.requires_grad = true;
    } else {
        for (int32_t in : n.ins)
            n.requires_grad |= nodes_[static_cast<size_t>(in)].requires_grad;
    }
    nodes_.push_back(std::move(n));
    return Value{this, static_cast<int32_t>(nodes_.size() - 1)};
}

Graph::Node& Graph::node(Value v) { return nodes_[static_cast<size_t>(v.index)]; }
const Graph::Node& Graph::node(Value v) const { return nodes_[static_cast<size_t>(v.index)]; }

void Graph::check_same_graph(Value v) const {
    if (!v.valid() || v.graph != this || static_cast<size_t>(v.index) >= nodes_.size())
        throw ContractError("graph: value handle does not belong to this graph");
}

void Graph::check_finite(const Tensor& t, OpKind kind, size_t idx) const {
    if (!t.all_finite())
        throw NumericError(std::string("non-finite value in node #") + std::to_string(idx) +
                           " (" + op_kind_name(kind) + ")");
}

const Tensor& Graph::tensor_of(Value v) const {
    check_same_graph(v);
    return node(v).out;
}

Value Graph::leaf(Tensor& param) {
    Node n;
    n.kind = OpKind::Leaf;
    n.out = param;  // value snapshot; grads flow to the bound tensor
    n.out.drop_grad();
    n.bound = &param;
    check_finite(n.out, n.kind, nodes_.size());
    return push(std::move(n));
}

Value Graph::input(Tensor data) {
    Node n;
    n.kind = OpKind::Input;
    n.out = std::move(data);
    check_finite(n.out, n.kind, nodes_.size());
    return push(std::move(n));
}

Value Graph::affine(Value W, Value x, Value b) {
    check_same_graph(W);
    check_same_graph(x);
    const Tensor& tw = node(W).out;
    const Tensor& tx = node(x).out;
    if (tw.rank() != 2 || tx.rank() != 1 || tw.cols() != tx.size())
        throw ContractError(std::string("affine: W ") + tw.shape_str() + " incompatible with x " +
                            tx.shape_str());
    const size_t m = tw.rows(), k = tw.cols();
    Node n;
    n.kind = OpKind::Affine;
    n.ins = {W.index, x.index};
    n.out = Tensor::vector(m);
    const double* wv = tw.values().data();
    const double* xv = tx.values().data();
    double* ov = n.out.values().data();
    for (size_t i = 0; i < m; ++i) {
        double acc = 0.0;
        const double* wr = wv + i * k;
        for (size_t j = 0; j < k; ++j) acc += wr[j] * xv[j];
        ov[i] = acc;
    }
    if (b.valid()) {
        check_same_graph(b);
        const Tensor& tb = node(b).out;
        if (tb.rank() != 1 || tb.size() != m)
            throw ContractError(std::string("affine: bias ") + tb.shape_str() +
                                " does not match output length " + std::to_string(m));
        n.ins.push_back(b.index);
        for (size_t i = 0; i < m; ++i) ov[i] += tb.values()[i];
    }
    check_finite(n.out, n.kind, nodes_.size());
    return push(std::move(n));
}

Value Graph::affine(Value W, Value x) { return affine(W, x, Value{}); }

Value Graph::tanh(Value x) {
    check_same_graph(x);
    Node n;
    n.kind = OpKind::Tanh;
    n.ins = {x.index};
    n.out = node(x).out;
    for (double& v : n.out.values()) v = std::tanh(v);
    check_finite(n.out, n.kind, nodes_.size());
    return push(std::move(n));
}

Value Graph::sigmoid(Value x) {
    check_same_graph(x);
    Node n;
    n.kind = OpKind::Sigmoid;
    n.ins = {x.index};
    n.out = node(x).out;
    for (double& v : n.out.values()) v = 1.0 / (1.0 + std::exp(-v));
    check_finite(n.out, n.kind, nodes_.size());
    return push(std::move(n));
}

Value Graph::hadamard(Value x, Value y) {
    check_same_graph(x);
    check_same_graph(y);
    const Tensor& tx = node(x).out;
    const Tensor& ty = node(y).out;
    if (!tx.same_shape(ty))
        throw ContractError(std::string("hadamard: shape ") + tx.shape_str() + " vs " +
                            ty.shape_str());
    Node n;
    n.kind = OpKind::Hadamard;
    n.ins = {x.index, y.index};
    n.out = tx;
    for (size_t i = 0; i < n.out.size(); ++i) n.out.at(i) = tx.at(i) * ty.at(i);
    check_finite(n.out, n.kind, nodes_.size());
    return push(std::move(n));
}

Value Graph::combine(double c0, Value x, double c1, Value y) {
    check_same_graph(x);
    check_same_graph(y);
    const Tensor& tx = node(x).out;
    const Tensor& ty = node(y).out;
    if (!tx.same_shape(ty))
        throw ContractError(std::string("combine: shape ") + tx.shape_str() + " vs " +
                            ty.shape_str());
    Node n;
    n.kind = OpKind::Combine;
    n.ins = {x.index, y.index};
    n.c0 = c0;
    n.c1 = c1;
    n.out = tx;
    for (size_t i = 0; i < n.out.size(); ++i) n.out.at(i) = c0 * tx.at(i) + c1 * ty.at(i);
    check_finite(n.out, n.kind, nodes_.size());
    return push(std::move(n));
}

Value Graph::concat(Value x, Value y) {
    check_same_graph(x);
    check_same_graph(y);
    const Tensor& tx = node(x).out;
    const Tensor& ty = node(y).out;
    if (tx.rank() != 1 || ty.rank() != 1)
        throw ContractError("concat: only rank-1 operands supported");
    Node n;
    n.kind = OpKind::Concat;
    n.ins = {x.index, y.index};
    n.out = Tensor::vector(tx.size() + ty.size());
    std::copy(tx.values().begin(), tx.values().end(), n.out.values().begin());
    std::copy(ty.values().begin(), ty.values().end(),
              n.out.values().begin() + static_cast<long>(tx.size()));
    return push(std::move(n));
}

Value Graph::slice(Value x, size_t start, size_t len) {
    check_same_graph(x);
    const Tensor& tx = node(x).out;
    if (tx.rank() != 1) throw ContractError("slice: operand is not a vector");
    if (start + len > tx.size() || len == 0)
        throw ContractError("slice: range [" + std::to_string(start) + "," +
                            std::to_string(start + len) + ") invalid for length " +
                            std::to_string(tx.size()));
    Node n;
    n.kind = OpKind::Slice;
    n.ins = {x.index};
    n.row = static_cast<int32_t>(start);
    n.len = static_cast<int32_t>(len);
    n.out = Tensor::vector(len);
    std::copy(tx.values().begin() + static_cast<long>(start),
              tx.values().begin() + static_cast<long>(start + len), n.out.values().begin());
    return push(std::move(n));
}

Value Graph::row_select(Value matrix, size_t row) {
    check_same_graph(matrix);
    const Tensor& tm = node(matrix).out;
    if (tm.rank() != 2)
        throw ContractError("row_select: operand is not a matrix");
    if (row >= tm.rows())
        throw ContractError("row_select: row " + std::to_string(row) + " out of range [0," +
                            std::to_string(tm.rows()) + ")");
    Node n;
    n.kind = OpKind::RowSelect;
    n.ins = {matrix.index};
    n.row = static_cast<int32_t>(row);
    n.out = Tensor::vector(tm.cols());
    std::copy(tm.row_ptr(row), tm.row_ptr(row) + tm.cols(), n.out.values().begin());
    return push(std::move(n));
}

Value Graph::stack_rows(const std::vector<Value>& rows) {
    if (rows.empty()) throw DegenerateInputError("stack_rows: no rows");
    for (Value v : rows) check_same_graph(v);
    const size_t cols = node(rows[0]).out.size();
    Node n;
    n.kind = OpKind::StackRows;
    n.out = Tensor::matrix(rows.size(), cols);
    for (size_t r = 0; r < rows.size(); ++r) {
        const Tensor& tr = node(rows[r]).out;
        if (tr.rank() != 1 || tr.size() != cols)
            throw ContractError("stack_rows: row " + std::to_string(r) + " has shape " +
                                tr.shape_str() + ", expected length " + std::to_string(cols));
        n.ins.push_back(rows[r].index);
        std::copy(tr.values().begin(), tr.values().end(), n.out.row_ptr(r));
    }
    return push(std::move(n));
}

Value Graph::stack_scalars(const std::vector<Value>& scalars) {
    if (scalars.empty()) throw DegenerateInputError("stack_scalars: no entries");
    Node n;
    n.kind = OpKind::StackScalars;
    n.out = Tensor::vector(scalars.size());
    for (size_t i = 0; i < scalars.size(); ++i) {
        check_same_graph(scalars[i]);
        const Tensor& ti = node(scalars[i]).out;
        if (!ti.is_scalar())
            throw ContractError("stack_scalars: entry " + std::to_string(i) + " is not scalar");
        n.ins.push_back(scalars[i].index);
        n.out.at(i) = ti.scalar_value();
    }
    return push(std::move(n));
}

Value Graph::dot(Value x, Value y) {
    check_same_graph(x);
    check_same_graph(y);
    const Tensor& tx = node(x).out;
    const Tensor& ty = node(y).out;
    if (tx.rank() != 1 || !tx.same_shape(ty))
        throw ContractError(std::string("dot: shape ") + tx.shape_str() + " vs " +
                            ty.shape_str());
    Node n;
    n.kind = OpKind::Dot;
    n.ins = {x.index, y.index};
    double s = 0.0;
    for (size_t i = 0; i < tx.size(); ++i) s += tx.at(i) * ty.at(i);
    n.out = Tensor::scalar(s);
    check_finite(n.out, n.kind, nodes_.size());
    return push(std::move(n));
}

Value Graph::softmax_masked(Value scores, const std::vector<uint8_t>& mask) {
    check_same_graph(scores);
    const Tensor& ts = node(scores).out;
    if (ts.rank() != 1 || ts.size() != mask.size())
        throw ContractError("softmax_masked: scores " + ts.shape_str() + " vs mask length " +
                            std::to_string(mask.size()));
    check_finite(ts, OpKind::SoftmaxMasked, nodes_.size());
    size_t live = 0;
    double mx = 0.0;
    for (size_t i = 0; i < mask.size(); ++i) {
        if (!mask[i]) continue;
        mx = (live == 0) ? ts.at(i) : std::max(mx, ts.at(i));
        ++live;
    }
    if (live == 0) throw DegenerateInputError("softmax_masked: all entries masked");
    Node n;
    n.kind = OpKind::SoftmaxMasked;
    n.ins = {scores.index};
    n.mask = mask;
    n.out = Tensor::vector(mask.size(), 0.0);
    double z = 0.0;
    for (size_t i = 0; i < mask.size(); ++i) {
        if (!mask[i]) continue;
        n.out.at(i) = std::exp(ts.at(i) - mx);
        z += n.out.at(i);
    }
    for (size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) n.out.at(i) /= z;
    check_finite(n.out, n.kind, nodes_.size());
    return push(std::move(n));
}

Value Graph::pool_rows(Value states, Value alphas, const std::vector<uint8_t>& mask) {
    check_same_graph(states);
    check_same_graph(alphas);
    const Tensor& tm = node(states).out;
    const Tensor& ta = node(alphas).out;
    if (tm.rank() != 2 || ta.rank() != 1 || tm.rows() != ta.size() || ta.size() != mask.size())
        throw ContractError("pool_rows: states " + tm.shape_str() + ", alphas " + ta.shape_str() +
                            ", mask length " + std::to_string(mask.size()));
    bool any = false;
    for (uint8_t m : mask) any |= (m != 0);
    if (!any) throw DegenerateInputError("pool_rows: all rows masked");
    Node n;
    n.kind = OpKind::PoolRows;
    n.ins = {states.index, alphas.index};
    n.mask = mask;
    n.out = Tensor::vector(tm.cols(), 0.0);
    for (size_t t = 0; t < tm.rows(); ++t) {
        if (!mask[t]) continue;
        const double a = ta.at(t);
        const double* row = tm.row_ptr(t);
        for (size_t c = 0; c < tm.cols(); ++c) n.out.at(c) += a * row[c];
    }
    check_finite(n.out, n.kind, nodes_.size());
    return push(std::move(n));
}

Value Graph::bce_loss(Value score, int label) {
    check_same_graph(score);
    if (label != 0 && label != 1)
        throw ContractError("bce_loss: label must be 0 or 1, got " + std::to_string(label));
    const Tensor& ts = node(score).out;
    if (!ts.is_scalar()) throw ContractError("bce_loss: score is not scalar");
    constexpr double kEps = 1e-12;
    const double p = std::clamp(ts.scalar_value(), kEps, 1.0 - kEps);
    Node n;
    n.kind = OpKind::BceLoss;
    n.ins = {score.index};
    n.row = label;
    n.out = Tensor::scalar(-(label * std::log(p) + (1 - label) * std::log(1.0 - p)));
    check_finite(n.out, n.kind, nodes_.size());
    return push(std::move(n));
}

Value Graph::gru_step_fused(Value x, Value h_prev, Value Wz, Value Wr, Value Wh, Value Uz,
                            Value Ur, Value Uh, Value bz, Value br, Value bh) {
    for (Value v : {x, h_prev, Wz, Wr, Wh, Uz, Ur, Uh, bz, br, bh}) check_same_graph(v);
    const Tensor& tx = node(x).out;
    const Tensor& th = node(h_prev).out;
    const size_t in_dim = tx.size(), hd = th.size();
    auto check_mat = [&](Value v, size_t r, size_t c, const char* what) {
        const Tensor& t = node(v).out;
        if (t.rank() != 2 || t.rows() != r || t.cols() != c)
            throw ContractError(std::string("gru_step: ") + what + " has shape " + t.shape_str() +
                                ", expected [" + std::to_string(r) + "," + std::to_string(c) +
                                "]");
    };
    check_mat(Wz, hd, in_dim, "W_z");
    check_mat(Wr, hd, in_dim, "W_r");
    check_mat(Wh, hd, in_dim, "W_h");
    check_mat(Uz, hd, hd, "U_z");
    check_mat(Ur, hd, hd, "U_r");
    check_mat(Uh, hd, hd, "U_h");
    for (Value b : {bz, br, bh})
        if (node(b).out.rank() != 1 || node(b).out.size() != hd)
            throw ContractError("gru_step: bias length must equal hidden dim");

    Node n;
    n.kind = OpKind::GruStep;
    n.ins = {x.index,  h_prev.index, Wz.index, Wr.index, Wh.index, Uz.index,
             Ur.index, Uh.index,     bz.index, br.index, bh.index};
    n.out = Tensor::vector(hd);
    n.stash.assign(3, std::vector<double>(hd));
    auto& z = n.stash[0];
    auto& r = n.stash[1];
    auto& htilde = n.stash[2];

    const double* xv = tx.values().data();
    const double* hv = th.values().data();
    auto gate = [&](Value W, Value U, Value b, std::vector<double>& out_vec, const double* hmul,
                    bool is_tanh) {
        const double* wv = node(W).out.values().data();
        const double* uv = node(U).out.values().data();
        const double* bv = node(b).out.values().data();
        for (size_t i = 0; i < hd; ++i) {
            double acc = 0.0;
            const double* wr = wv + i * in_dim;
            for (size_t j = 0; j < in_dim; ++j) acc += wr[j] * xv[j];
            const double* ur = uv + i * hd;
            for (size_t j = 0; j < hd; ++j) acc += ur[j] * hmul[j];
            acc += bv[i];
            out_vec[i] = is_tanh ? std::tanh(acc) : 1.0 / (1.0 + std::exp(-acc));
        }
    };
    gate(Wz, Uz, bz, z, hv, false);
    gate(Wr, Ur, br, r, hv, false);
    std::vector<double> rh(hd);
    for (size_t i = 0; i < hd; ++i) rh[i] = r[i] * hv[i];
    gate(Wh, Uh, bh, htilde, rh.data(), true);
    for (size_t i = 0; i < hd; ++i)
        n.out.at(i) = (1.0 - z[i]) * hv[i] + z[i] * htilde[i];
    check_finite(n.out, n.kind, nodes_.size());
    return push(std::move(n));
}

Value Graph::attn_score(Value W, Value h, Value c, Value u) {
    for (Value v : {W, h, c, u}) check_same_graph(v);
    const Tensor& tw = node(W).out;
    const Tensor& thv = node(h).out;
    const Tensor& tc = node(c).out;
    const Tensor& tu = node(u).out;
    if (tw.rank() != 2 || tw.cols() != thv.size() || tc.size() != tw.rows() ||
        tu.size() != tw.rows())
        throw ContractError("attn_score: W " + tw.shape_str() + ", h " + thv.shape_str() +
                            ", c " + tc.shape_str() + ", u " + tu.shape_str());
    const size_t proj = tw.rows(), dim = tw.cols();
    Node n;
    n.kind = OpKind::AttnScore;
    n.ins = {W.index, h.index, c.index, u.index};
    n.stash.assign(1, std::vector<double>(proj));
    auto& th = n.stash[0];
    const double* wv = tw.values().data();
    const double* hv = thv.values().data();
    double s = 0.0;
    for (size_t i = 0; i < proj; ++i) {
        double acc = 0.0;
        const double* wr = wv + i * dim;
        for (size_t j = 0; j < dim; ++j) acc += wr[j] * hv[j];
        acc += tc.at(i);
        th[i] = std::tanh(acc);
        s += tu.at(i) * th[i];
    }
    n.out = Tensor::scalar(s);
    check_finite(n.out, n.kind, nodes_.size());
    return push(std::move(n));
}

Value Graph::primitive_apply(OpKind kind, const std::vector<Value>& inputs) {
    switch (kind) {
        case OpKind::Affine:
            if (inputs.size() == 2) return affine(inputs[0], inputs[1]);
            if (inputs.size() == 3) return affine(inputs[0], inputs[1], inputs[2]);
            throw ContractError("primitive_apply(affine): expected 2 or 3 inputs");
        case OpKind::Tanh:
            if (inputs.size() != 1) throw ContractError("primitive_apply(tanh): expected 1 input");
            return tanh(inputs[0]);
        case OpKind::Sigmoid:
            if (inputs.size() != 1)
                throw ContractError("primitive_apply(sigmoid): expected 1 input");
            return sigmoid(inputs[0]);
        case OpKind::Hadamard:
            if (inputs.size() != 2)
                throw ContractError("primitive_apply(hadamard): expected 2 inputs");
            return hadamard(inputs[0], inputs[1]);
        case OpKind::Combine:
            if (inputs.size() != 2)
                throw ContractError("primitive_apply(combine): expected 2 inputs");
            return add(inputs[0], inputs[1]);
        case OpKind::Concat:
            if (inputs.size() != 2)
                throw ContractError("primitive_apply(concat): expected 2 inputs");
            return concat(inputs[0], inputs[1]);
        case OpKind::Dot:
            if (inputs.size() != 2) throw ContractError("primitive_apply(dot): expected 2 inputs");
            return dot(inputs[0], inputs[1]);
        default:
            throw ContractError(std::string("primitive_apply: unsupported kind ") +
                                op_kind_name(kind));
    }
}

void Graph::backward(Value loss) {
    check_same_graph(loss);
    Node& root = node(loss);
    if (!root.out.is_scalar())
        throw ContractError("backward: root is not scalar, shape " + root.out.shape_str());

    // Intermediate grads are local to one backward pass; only the bound
    // parameter tensors accumulate across passes.
    for (Node& n : nodes_) n.out.drop_grad();

    // Creation order is a topological order: inputs always precede outputs.
    // Only nodes with a differentiable ancestor participate.
    std::vector<uint8_t> reachable(nodes_.size(), 0);
    reachable[static_cast<size_t>(loss.index)] = 1;
    root.out.grad()[0] = 1.0;

    for (size_t i = nodes_.size(); i-- > 0;) {
        if (!reachable[i]) continue;
        Node& n = nodes_[i];
        if (!n.requires_grad || !n.out.has_grad()) continue;
        for (int32_t in : n.ins)
            if (nodes_[static_cast<size_t>(in)].requires_grad)
                reachable[static_cast<size_t>(in)] = 1;
        backward_node(n);
    }

    // Flush leaf grads into the bound parameter tensors.
    for (Node& n : nodes_) {
        if (n.kind == OpKind::Leaf && n.out.has_grad()) {
            auto& dst = n.bound->grad();
            const auto& src = n.out.grad();
            for (size_t i = 0; i < src.size(); ++i) dst[i] += src[i];
        }
    }
}

void Graph::backward_node(Node& n) {
    const auto& g = n.out.grad();
    auto in_tensor = [&](size_t slot) -> Tensor& {
        return nodes_[static_cast<size_t>(n.ins[slot])].out;
    };
    // nullptr when the input has no differentiable ancestor
    auto grad_if = [&](size_t slot) -> std::vector<double>* {
        Node& src = nodes_[static_cast<size_t>(n.ins[slot])];
        return src.requires_grad ? &src.out.grad() : nullptr;
    };

    switch (n.kind) {
        case OpKind::Leaf:
        case OpKind::Input:
            return;

        case OpKind::Affine: {
            Tensor& W = in_tensor(0);
            Tensor& x = in_tensor(1);
            const size_t m = W.rows(), k = W.cols();
            auto* gw = grad_if(0);
            auto* gx = grad_if(1);
            const double* wv = W.values().data();
            const double* xv = x.values().data();
            for (size_t i = 0; i < m; ++i) {
                const double gi = g[i];
                if (gi == 0.0) continue;
                if (gw) {
                    double* gwr = gw->data() + i * k;
                    for (size_t j = 0; j < k; ++j) gwr[j] += gi * xv[j];
                }
                if (gx) {
                    const double* wr = wv + i * k;
                    for (size_t j = 0; j < k; ++j) (*gx)[j] += gi * wr[j];
                }
            }
            if (n.ins.size() == 3) {
                if (auto* gb = grad_if(2))
                    for (size_t i = 0; i < m; ++i) (*gb)[i] += g[i];
            }
            return;
        }

        case OpKind::Tanh: {
            if (auto* gx = grad_if(0))
                for (size_t i = 0; i < n.out.size(); ++i) {
                    const double y = n.out.at(i);
                    (*gx)[i] += g[i] * (1.0 - y * y);
                }
            return;
        }

        case OpKind::Sigmoid: {
            if (auto* gx = grad_if(0))
                for (size_t i = 0; i < n.out.size(); ++i) {
                    const double y = n.out.at(i);
                    (*gx)[i] += g[i] * y * (1.0 - y);
                }
            return;
        }

        case OpKind::Hadamard: {
            Tensor& x = in_tensor(0);
            Tensor& y = in_tensor(1);
            auto* gx = grad_if(0);
            auto* gy = grad_if(1);
            for (size_t i = 0; i < n.out.size(); ++i) {
                if (gx) (*gx)[i] += g[i] * y.at(i);
                if (gy) (*gy)[i] += g[i] * x.at(i);
            }
            return;
        }

        case OpKind::Combine: {
            auto* gx = grad_if(0);
            auto* gy = grad_if(1);
            for (size_t i = 0; i < n.out.size(); ++i) {
                if (gx) (*gx)[i] += g[i] * n.c0;
                if (gy) (*gy)[i] += g[i] * n.c1;
            }
            return;
        }

        case OpKind::Concat: {
            const size_t nx = in_tensor(0).size();
            if (auto* gx = grad_if(0))
                for (size_t i = 0; i < nx; ++i) (*gx)[i] += g[i];
            if (auto* gy = grad_if(1))
                for (size_t i = 0; i < in_tensor(1).size(); ++i) (*gy)[i] += g[nx + i];
            return;
        }

        case OpKind::Slice: {
            if (auto* gx = grad_if(0)) {
                const size_t off = static_cast<size_t>(n.row);
                for (size_t i = 0; i < n.out.size(); ++i) (*gx)[off + i] += g[i];
            }
            return;
        }

        case OpKind::RowSelect: {
            if (auto* gm = grad_if(0)) {
                const size_t off = static_cast<size_t>(n.row) * in_tensor(0).cols();
                for (size_t i = 0; i < n.out.size(); ++i) (*gm)[off + i] += g[i];
            }
            return;
        }

        case OpKind::StackRows: {
            const size_t cols = n.out.cols();
            for (size_t r = 0; r < n.ins.size(); ++r)
                if (auto* gr = grad_if(r))
                    for (size_t c = 0; c < cols; ++c) (*gr)[c] += g[r * cols + c];
            return;
        }

        case OpKind::StackScalars: {
            for (size_t i = 0; i < n.ins.size(); ++i)
                if (auto* gs = grad_if(i)) (*gs)[0] += g[i];
            return;
        }

        case OpKind::Dot: {
            Tensor& x = in_tensor(0);
            Tensor& y = in_tensor(1);
            auto* gx = grad_if(0);
            auto* gy = grad_if(1);
            const double gs = g[0];
            for (size_t i = 0; i < x.size(); ++i) {
                if (gx) (*gx)[i] += gs * y.at(i);
                if (gy) (*gy)[i] += gs * x.at(i);
            }
            return;
        }

        case OpKind::SoftmaxMasked: {
            if (auto* gs = grad_if(0)) {
                double inner = 0.0;
                for (size_t i = 0; i < n.out.size(); ++i)
                    if (n.mask[i]) inner += g[i] * n.out.at(i);
                for (size_t i = 0; i < n.out.size(); ++i)
                    if (n.mask[i]) (*gs)[i] += n.out.at(i) * (g[i] - inner);
            }
            return;
        }

        case OpKind::PoolRows: {
            Tensor& states = in_tensor(0);
            Tensor& alphas = in_tensor(1);
            auto* gm = grad_if(0);
            auto* ga = grad_if(1);
            const size_t cols = states.cols();
            for (size_t t = 0; t < states.rows(); ++t) {
                if (!n.mask[t]) continue;
                const double a = alphas.at(t);
                const double* row = states.row_ptr(t);
                double acc = 0.0;
                double* gRow = gm ? gm->data() + t * cols : nullptr;
                for (size_t c = 0; c < cols; ++c) {
                    if (gRow) gRow[c] += g[c] * a;
                    acc += g[c] * row[c];
                }
                if (ga) (*ga)[t] += acc;
            }
            return;
        }

        case OpKind::BceLoss: {
            if (auto* gs = grad_if(0)) {
                constexpr double kEps = 1e-12;
                const double p = std::clamp(in_tensor(0).scalar_value(), kEps, 1.0 - kEps);
                const double y = static_cast<double>(n.row);
                (*gs)[0] += g[0] * (p - y) / (p * (1.0 - p));
            }
            return;
        }

        case OpKind::GruStep: {
            // ins: x, h_prev, Wz, Wr, Wh, Uz, Ur, Uh, bz, br, bh
            const Tensor& x = in_tensor(0);
            const Tensor& h = in_tensor(1);
            const size_t in_dim = x.size(), hd = h.size();
            const auto& z = n.stash[0];
            const auto& r = n.stash[1];
            const auto& ht = n.stash[2];
            const double* xv = x.values().data();
            const double* hv = h.values().data();

            std::vector<double> da_z(hd), da_r(hd), da_h(hd);
            auto* gh = grad_if(1);
            for (size_t i = 0; i < hd; ++i) {
                const double gi = g[i];
                const double dz = gi * (ht[i] - hv[i]);
                da_z[i] = dz * z[i] * (1.0 - z[i]);
                da_h[i] = gi * z[i] * (1.0 - ht[i] * ht[i]);
                if (gh) (*gh)[i] += gi * (1.0 - z[i]);
            }
            // through htilde's recurrent term: t = Uh^T da_h
            const double* uhv = in_tensor(7).values().data();
            std::vector<double> t_vec(hd, 0.0);
            for (size_t i = 0; i < hd; ++i) {
                const double d = da_h[i];
                if (d == 0.0) continue;
                const double* ur = uhv + i * hd;
                for (size_t j = 0; j < hd; ++j) t_vec[j] += d * ur[j];
            }
            for (size_t i = 0; i < hd; ++i) {
                const double dr = t_vec[i] * hv[i];
                da_r[i] = dr * r[i] * (1.0 - r[i]);
                if (gh) (*gh)[i] += t_vec[i] * r[i];
            }

            auto accumulate_gate = [&](size_t slot_W, size_t slot_U, size_t slot_b,
                                       const std::vector<double>& da, const double* hmul) {
                if (auto* gw = grad_if(slot_W)) {
                    for (size_t i = 0; i < hd; ++i) {
                        const double d = da[i];
                        if (d == 0.0) continue;
                        double* row = gw->data() + i * in_dim;
                        for (size_t j = 0; j < in_dim; ++j) row[j] += d * xv[j];
                    }
                }
                if (auto* gu = grad_if(slot_U)) {
                    for (size_t i = 0; i < hd; ++i) {
                        const double d = da[i];
                        if (d == 0.0) continue;
                        double* row = gu->data() + i * hd;
                        for (size_t j = 0; j < hd; ++j) row[j] += d * hmul[j];
                    }
                }
                if (auto* gb = grad_if(slot_b))
                    for (size_t i = 0; i < hd; ++i) (*gb)[i] += da[i];
            };

            std::vector<double> rh(hd);
            for (size_t i = 0; i < hd; ++i) rh[i] = r[i] * hv[i];
            accumulate_gate(2, 5, 8, da_z, hv);   // z gate
            accumulate_gate(3, 6, 9, da_r, hv);   // r gate
            accumulate_gate(4, 7, 10, da_h, rh.data());  // candidate

            auto* gx = grad_if(0);
            if (gx || gh) {
                auto add_wt = [&](size_t slot_W, size_t slot_U, const std::vector<double>& da,
                                  bool into_h) {
                    const double* wv = in_tensor(slot_W).values().data();
                    const double* uv = in_tensor(slot_U).values().data();
                    for (size_t i = 0; i < hd; ++i) {
                        const double d = da[i];
                        if (d == 0.0) continue;
                        if (gx) {
                            const double* wr = wv + i * in_dim;
                            for (size_t j = 0; j < in_dim; ++j) (*gx)[j] += d * wr[j];
                        }
                        if (into_h && gh) {
                            const double* ur = uv + i * hd;
                            for (size_t j = 0; j < hd; ++j) (*gh)[j] += d * ur[j];
                        }
                    }
                };
                add_wt(2, 5, da_z, true);
                add_wt(3, 6, da_r, true);
                add_wt(4, 7, da_h, false);  // recurrent part already handled via t_vec
            }
            return;
        }

        case OpKind::AttnScore: {
            // ins: W, h, c, u
            const Tensor& W = in_tensor(0);
            const Tensor& h = in_tensor(1);
            const Tensor& u = in_tensor(3);
            const size_t proj = W.rows(), dim = W.cols();
            const auto& th = n.stash[0];
            const double gs = g[0];
            auto* gw = grad_if(0);
            auto* gh = grad_if(1);
            auto* gc = grad_if(2);
            auto* gu = grad_if(3);
            const double* wv = W.values().data();
            const double* hv = h.values().data();
            for (size_t i = 0; i < proj; ++i) {
                if (gu) (*gu)[i] += gs * th[i];
                const double dpre = gs * u.at(i) * (1.0 - th[i] * th[i]);
                if (gc) (*gc)[i] += dpre;
                if (dpre == 0.0) continue;
                if (gw) {
                    double* row = gw->data() + i * dim;
                    for (size_t j = 0; j < dim; ++j) row[j] += dpre * hv[j];
                }
                if (gh) {
                    const double* wr = wv + i * dim;
                    for (size_t j = 0; j < dim; ++j) (*gh)[j] += dpre * wr[j];
                }
            }
            return;
        }
    }
}

std::map<std::string, Tensor> gradient_map(
    const std::vector<std::pair<std::string, Tensor*>>& params) {
    std::map<std::string, Tensor> out;
    for (const auto& [name, t] : params) out.emplace(name, t->grad_as_tensor());
    return out;
}

}  // namespace hirenet
