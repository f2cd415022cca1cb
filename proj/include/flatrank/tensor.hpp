#pragma once

#include <flatrank/field.hpp>

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace flatrank {

/// Index tuple for one tensor factor, one component per Kronecker slot.
using Tuple = std::vector<std::uint32_t>;

/// Mixed-radix shape of a factor space built as a Kronecker composite.
/// A plain vector space of dimension n is the one-slot shape {n}.
struct FactorShape {
    std::vector<std::uint32_t> radices;

    static FactorShape plain(std::uint32_t n) { return FactorShape{{n}}; }
    static FactorShape uniform(std::uint32_t subdim, std::size_t slots) {
        return FactorShape{std::vector<std::uint32_t>(slots, subdim)};
    }

    std::size_t slots() const { return radices.size(); }

    std::size_t dim() const {
        std::size_t d = 1;
        for (auto r : radices) d *= r;
        return d;
    }

    bool contains(const Tuple& t) const {
        if (t.size() != radices.size()) return false;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i] >= radices[i]) return false;
        }
        return true;
    }

    /// Row-major: the first slot is the most significant digit.
    std::size_t flat(const Tuple& t) const {
        std::size_t v = 0;
        for (std::size_t i = 0; i < t.size(); ++i) v = v * radices[i] + t[i];
        return v;
    }

    Tuple unflat(std::size_t v) const {
        Tuple t(radices.size());
        for (std::size_t i = radices.size(); i-- > 0;) {
            t[i] = static_cast<std::uint32_t>(v % radices[i]);
            v /= radices[i];
        }
        return t;
    }

    /// Uniform sub-dimension, or 0 when the radices differ.
    std::uint32_t uniform_subdim() const {
        if (radices.empty()) return 0;
        for (auto r : radices) {
            if (r != radices.front()) return 0;
        }
        return radices.front();
    }

    FactorShape concat(const FactorShape& other) const {
        FactorShape out = *this;
        out.radices.insert(out.radices.end(), other.radices.begin(), other.radices.end());
        return out;
    }

    friend bool operator==(const FactorShape&, const FactorShape&) = default;
};

/// One index tuple per factor (A, B, C).
struct MultiIndex {
    std::array<Tuple, 3> factor;

    MultiIndex() = default;
    MultiIndex(Tuple a, Tuple b, Tuple c) : factor{std::move(a), std::move(b), std::move(c)} {}

    const Tuple& a() const { return factor[0]; }
    const Tuple& b() const { return factor[1]; }
    const Tuple& c() const { return factor[2]; }

    friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

using Shape3 = std::array<FactorShape, 3>;

inline std::string describe(const Tuple& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(t[i]);
    }
    return s + ")";
}

inline std::string describe(const MultiIndex& idx) {
    return describe(idx.a()) + "|" + describe(idx.b()) + "|" + describe(idx.c());
}

/// Order-3 tensor with exact integer coefficients (interpreted in `field`).
/// Never stores a zero coefficient.
class SparseTensor {
public:
    using Entries = std::map<MultiIndex, std::int64_t>;

    SparseTensor() = default;
    SparseTensor(Shape3 shapes, FieldSpec field) : shapes_(std::move(shapes)), field_(field) {}

    const Shape3& shapes() const { return shapes_; }
    const FactorShape& shape(std::size_t factor) const { return shapes_.at(factor); }
    std::array<std::size_t, 3> dims() const { return {shapes_[0].dim(), shapes_[1].dim(), shapes_[2].dim()}; }
    const FieldSpec& field() const { return field_; }
    const Entries& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    std::int64_t at(const MultiIndex& idx) const {
        auto it = entries_.find(idx);
        return it == entries_.end() ? 0 : it->second;
    }

    bool in_bounds(const MultiIndex& idx) const {
        for (std::size_t r = 0; r < 3; ++r) {
            if (!shapes_[r].contains(idx.factor[r])) return false;
        }
        return true;
    }

    /// Adds `coef` to the entry at `idx`, dropping the entry if it cancels.
    void accumulate(const MultiIndex& idx, std::int64_t coef) {
        if (!in_bounds(idx)) throw BoundsError("tensor index out of bounds: " + describe(idx));
        coef = normalize(coef, field_);
        if (coef == 0) return;
        auto [it, inserted] = entries_.try_emplace(idx, coef);
        if (!inserted) {
            it->second = field_add(it->second, coef, field_);
            if (it->second == 0) entries_.erase(it);
        }
    }

    friend bool operator==(const SparseTensor& x, const SparseTensor& y) {
        return x.shapes_ == y.shapes_ && x.field_ == y.field_ && x.entries_ == y.entries_;
    }

private:
    Shape3 shapes_{FactorShape::plain(1), FactorShape::plain(1), FactorShape::plain(1)};
    FieldSpec field_{};
    Entries entries_;
};

/// Linear map between factor spaces, stored as (target row, source column) -> coefficient.
class FactorMap {
public:
    FactorMap(std::size_t source_dim, std::size_t target_dim) : source_dim_(source_dim), target_dim_(target_dim) {}

    static FactorMap identity(std::size_t n) {
        FactorMap m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }
    static FactorMap zero(std::size_t source_dim, std::size_t target_dim) { return FactorMap(source_dim, target_dim); }

    std::size_t source_dim() const { return source_dim_; }
    std::size_t target_dim() const { return target_dim_; }
    const std::map<std::pair<std::size_t, std::size_t>, std::int64_t>& entries() const { return entries_; }

    void set(std::size_t row, std::size_t col, std::int64_t value) {
        if (row >= target_dim_ || col >= source_dim_) {
            throw BoundsError("factor map entry (" + std::to_string(row) + "," + std::to_string(col) + ") out of bounds");
        }
        if (value == 0) {
            entries_.erase({row, col});
        } else {
            entries_[{row, col}] = value;
        }
    }

    std::int64_t at(std::size_t row, std::size_t col) const {
        auto it = entries_.find({row, col});
        return it == entries_.end() ? 0 : it->second;
    }

    /// Nonzero (row, value) pairs of every source column.
    std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> columns() const {
        std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> cols(source_dim_);
        for (const auto& [rc, v] : entries_) cols[rc.second].emplace_back(rc.first, v);
        return cols;
    }

private:
    std::size_t source_dim_;
    std::size_t target_dim_;
    std::map<std::pair<std::size_t, std::size_t>, std::int64_t> entries_;
};

struct TensorTerm {
    MultiIndex index;
    std::int64_t coef;
};

inline SparseTensor make_tensor(const Shape3& shapes, const std::vector<TensorTerm>& terms,
                                FieldSpec field = FieldSpec{}) {
    SparseTensor t(shapes, field);
    for (const auto& term : terms) t.accumulate(term.index, term.coef);
    return t;
}

/// Plain (single-slot) dimensions with scalar indices.
inline SparseTensor make_tensor(std::array<std::uint32_t, 3> dims,
                                const std::vector<std::pair<std::array<std::uint32_t, 3>, std::int64_t>>& terms,
                                FieldSpec field = FieldSpec{}) {
    SparseTensor t({FactorShape::plain(dims[0]), FactorShape::plain(dims[1]), FactorShape::plain(dims[2])}, field);
    for (const auto& [ijk, coef] : terms) {
        t.accumulate(MultiIndex{{ijk[0]}, {ijk[1]}, {ijk[2]}}, coef);
    }
    return t;
}

namespace detail {

inline void require_same_space(const SparseTensor& t, const SparseTensor& s) {
    if (t.shapes() != s.shapes()) throw ShapeError("tensor shapes differ");
    if (!(t.field() == s.field())) throw ShapeError("tensor fields differ");
}

} // namespace detail

inline SparseTensor add(const SparseTensor& t, const SparseTensor& s) {
    detail::require_same_space(t, s);
    SparseTensor out = t;
    for (const auto& [idx, v] : s.entries()) out.accumulate(idx, v);
    return out;
}

inline SparseTensor subtract(const SparseTensor& t, const SparseTensor& s) {
    detail::require_same_space(t, s);
    SparseTensor out = t;
    for (const auto& [idx, v] : s.entries()) out.accumulate(idx, -v);
    return out;
}

inline SparseTensor scale(const SparseTensor& t, std::int64_t factor) {
    SparseTensor out(t.shapes(), t.field());
    for (const auto& [idx, v] : t.entries()) out.accumulate(idx, field_mul(v, factor, t.field()));
    return out;
}

/// External tensor product: slots of `t` come first in every factor tuple.
inline SparseTensor kronecker(const SparseTensor& t, const SparseTensor& s) {
    if (!(t.field() == s.field())) throw ShapeError("tensor fields differ");
    Shape3 shapes{t.shape(0).concat(s.shape(0)), t.shape(1).concat(s.shape(1)), t.shape(2).concat(s.shape(2))};
    SparseTensor out(shapes, t.field());
    for (const auto& [ti, tv] : t.entries()) {
        for (const auto& [si, sv] : s.entries()) {
            MultiIndex idx = ti;
            for (std::size_t r = 0; r < 3; ++r) {
                idx.factor[r].insert(idx.factor[r].end(), si.factor[r].begin(), si.factor[r].end());
            }
            out.accumulate(idx, field_mul(tv, sv, t.field()));
        }
    }
    return out;
}

inline SparseTensor kronecker_power(const SparseTensor& t, std::size_t m) {
    if (m == 0) throw ArgumentError("Kronecker power requires m >= 1");
    SparseTensor out = t;
    for (std::size_t i = 1; i < m; ++i) out = kronecker(out, t);
    return out;
}

/// Re-homes `t` into larger factor spaces, keeping every index tuple unchanged.
inline SparseTensor pad(const SparseTensor& t, const Shape3& shapes) {
    for (std::size_t r = 0; r < 3; ++r) {
        const auto& from = t.shape(r).radices;
        const auto& to = shapes[r].radices;
        if (from.size() != to.size()) throw ShapeError("padding cannot change the number of Kronecker slots");
        for (std::size_t i = 0; i < from.size(); ++i) {
            if (to[i] < from[i]) throw ShapeError("padding cannot shrink a factor");
        }
    }
    SparseTensor out(shapes, t.field());
    for (const auto& [idx, v] : t.entries()) out.accumulate(idx, v);
    return out;
}

/// Applies `phi` to one factor (0 = A, 1 = B, 2 = C), identity on the others.
/// The mapped factor becomes a plain space of dimension phi.target_dim().
inline SparseTensor apply_factor_map(const SparseTensor& t, std::size_t factor, const FactorMap& phi) {
    if (factor > 2) throw ArgumentError("factor index must be 0, 1 or 2");
    if (phi.source_dim() != t.shape(factor).dim()) {
        throw ShapeError("factor map source dimension " + std::to_string(phi.source_dim()) +
                         " does not match factor dimension " + std::to_string(t.shape(factor).dim()));
    }
    Shape3 shapes = t.shapes();
    shapes[factor] = FactorShape::plain(static_cast<std::uint32_t>(phi.target_dim()));
    SparseTensor out(shapes, t.field());
    const auto cols = phi.columns();
    for (const auto& [idx, v] : t.entries()) {
        const auto& col = cols[t.shape(factor).flat(idx.factor[factor])];
        for (const auto& [row, coef] : col) {
            MultiIndex mapped = idx;
            mapped.factor[factor] = Tuple{static_cast<std::uint32_t>(row)};
            out.accumulate(mapped, field_mul(v, normalize(coef, t.field()), t.field()));
        }
    }
    return out;
}

} // namespace flatrank
