#pragma once

#include <flatrank/field.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace flatrank {

/// Integer matrix with sorted sparse storage. Zero coefficients are never stored.
class SparseMatrix {
public:
    using Key = std::pair<std::size_t, std::size_t>;

    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nonzeros() const { return entries_.size(); }
    const std::map<Key, std::int64_t>& entries() const { return entries_; }

    std::int64_t at(std::size_t r, std::size_t c) const {
        auto it = entries_.find({r, c});
        return it == entries_.end() ? 0 : it->second;
    }

    void accumulate(std::size_t r, std::size_t c, std::int64_t v) {
        if (r >= rows_ || c >= cols_) {
            throw BoundsError("matrix entry (" + std::to_string(r) + "," + std::to_string(c) + ") out of bounds");
        }
        if (v == 0) return;
        auto [it, inserted] = entries_.try_emplace({r, c}, v);
        if (!inserted) {
            if (__builtin_add_overflow(it->second, v, &it->second)) {
                throw std::overflow_error("matrix coefficient overflow");
            }
            if (it->second == 0) entries_.erase(it);
        }
    }

    SparseMatrix transpose() const {
        SparseMatrix t(cols_, rows_);
        for (const auto& [rc, v] : entries_) t.entries_.emplace(Key{rc.second, rc.first}, v);
        return t;
    }

    /// Nonzero (row, value) pairs of column c.
    std::vector<std::pair<std::size_t, std::int64_t>> column(std::size_t c) const {
        std::vector<std::pair<std::size_t, std::int64_t>> out;
        for (const auto& [rc, v] : entries_) {
            if (rc.second == c) out.emplace_back(rc.first, v);
        }
        return out;
    }

    /// Every column as a sorted (row, value) list.
    std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> columns() const {
        std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> out(cols_);
        for (const auto& [rc, v] : entries_) out[rc.second].emplace_back(rc.first, v);
        return out;
    }

    /// Columns of `other` appended on the right.
    SparseMatrix hconcat(const SparseMatrix& other) const {
        if (other.rows_ != rows_) throw ShapeError("hconcat requires equal row counts");
        SparseMatrix out(rows_, cols_ + other.cols_);
        out.entries_ = entries_;
        for (const auto& [rc, v] : other.entries_) out.entries_.emplace(Key{rc.first, rc.second + cols_}, v);
        return out;
    }

    friend SparseMatrix operator+(const SparseMatrix& x, const SparseMatrix& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw ShapeError("matrix dimensions differ");
        SparseMatrix out = x;
        for (const auto& [rc, v] : y.entries_) out.accumulate(rc.first, rc.second, v);
        return out;
    }

    friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::map<Key, std::int64_t> entries_;
};

} // namespace flatrank
