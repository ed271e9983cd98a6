// Copyright (c) 2026 The HireNet Authors
// SPDX-License-Identifier: Apache-2.0
//
// Dense row-major 64-bit tensor, rank 0..2. Carries a lazily allocated
// gradient buffer of identical shape; the computation graph accumulates
// into it during the backward pass.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "hirenet/errors.hpp"

namespace hirenet {

class Tensor {
public:
    Tensor() = default;

    static Tensor scalar(double v) {
        Tensor t;
        t.rank_ = 0;
        t.rows_ = 1;
        t.cols_ = 1;
        t.values_ = {v};
        return t;
    }

    static Tensor vector(size_t n, double fill = 0.0) {
        Tensor t;
        t.rank_ = 1;
        t.rows_ = n;
        t.cols_ = 1;
        t.values_.assign(n, fill);
        return t;
    }

    static Tensor vector(std::vector<double> v) {
        Tensor t;
        t.rank_ = 1;
        t.rows_ = v.size();
        t.cols_ = 1;
        t.values_ = std::move(v);
        return t;
    }

    static Tensor vector(std::initializer_list<double> v) {
        return vector(std::vector<double>(v));
    }

    static Tensor matrix(size_t rows, size_t cols, double fill = 0.0) {
        Tensor t;
        t.rank_ = 2;
        t.rows_ = rows;
        t.cols_ = cols;
        t.values_.assign(rows * cols, fill);
        return t;
    }

    static Tensor matrix(size_t rows, size_t cols, std::vector<double> v) {
        if (v.size() != rows * cols)
            throw ContractError("Tensor::matrix: " + std::to_string(v.size()) +
                                " values for shape " + std::to_string(rows) + "x" +
                                std::to_string(cols));
        Tensor t;
        t.rank_ = 2;
        t.rows_ = rows;
        t.cols_ = cols;
        t.values_ = std::move(v);
        return t;
    }

    static Tensor matrix(size_t rows, size_t cols, std::initializer_list<double> v) {
        return matrix(rows, cols, std::vector<double>(v));
    }

    size_t rank() const { return rank_; }

    std::vector<size_t> shape() const {
        if (rank_ == 0) return {};
        if (rank_ == 1) return {rows_};
        return {rows_, cols_};
    }

    size_t size() const { return values_.size(); }
    size_t rows() const { return rows_; }
    size_t cols() const { return rank_ == 2 ? cols_ : 1; }

    bool is_scalar() const { return values_.size() == 1 && rank_ <= 1; }

    double scalar_value() const {
        if (!is_scalar()) throw ContractError("Tensor: scalar_value() on non-scalar");
        return values_[0];
    }

    double& at(size_t i) { return values_[i]; }
    double at(size_t i) const { return values_[i]; }
    double& at(size_t r, size_t c) { return values_[r * cols_ + c]; }
    double at(size_t r, size_t c) const { return values_[r * cols_ + c]; }

    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

    const double* row_ptr(size_t r) const { return values_.data() + r * cols_; }
    double* row_ptr(size_t r) { return values_.data() + r * cols_; }

    bool same_shape(const Tensor& o) const {
        return rank_ == o.rank_ && rows_ == o.rows_ && cols_ == o.cols_;
    }

    std::string shape_str() const {
        if (rank_ == 0) return "[]";
        if (rank_ == 1) return "[" + std::to_string(rows_) + "]";
        return "[" + std::to_string(rows_) + "," + std::to_string(cols_) + "]";
    }

    bool all_finite() const {
        for (double v : values_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    // --- gradient buffer ---

    bool has_grad() const { return !grad_.empty(); }

    std::vector<double>& grad() {
        if (grad_.empty()) grad_.assign(values_.size(), 0.0);
        return grad_;
    }

    const std::vector<double>& grad() const { return grad_; }

    void zero_grad() { grad_.assign(values_.size(), 0.0); }
    void drop_grad() { grad_.clear(); }

    Tensor grad_as_tensor() const {
        Tensor t;
        t.rank_ = rank_;
        t.rows_ = rows_;
        t.cols_ = cols_;
        t.values_ = grad_.empty() ? std::vector<double>(values_.size(), 0.0) : grad_;
        return t;
    }

private:
    uint8_t rank_ = 1;
    size_t rows_ = 0;
    size_t cols_ = 1;
    std::vector<double> values_;
    std::vector<double> grad_;
};

}  // namespace hirenet
