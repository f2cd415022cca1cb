#pragma once

#include <flatrank/generators.hpp>
#include <flatrank/matrix.hpp>
#include <flatrank/rank.hpp>
#include <flatrank/tensor.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace flatrank {

/// Strictly increasing index tuple naming a basis vector of the p-th exterior power.
using WedgeIndex = std::vector<std::uint32_t>;

struct SignedWedge {
    WedgeIndex wedge;
    /// +1 or -1 for the sorting permutation's parity, 0 on a repeated index.
    int sign = 0;
};

inline SignedWedge canonicalize(WedgeIndex t) {
    int sign = 1;
    // Insertion sort, counting transpositions.
    for (std::size_t i = 1; i < t.size(); ++i) {
        for (std::size_t j = i; j > 0 && t[j - 1] >= t[j]; --j) {
            if (t[j - 1] == t[j]) return {{}, 0};
            std::swap(t[j - 1], t[j]);
            sign = -sign;
        }
    }
    return {std::move(t), sign};
}

/// All C(dim, p) strictly increasing tuples, lexicographic.
inline std::vector<WedgeIndex> wedge_basis(std::size_t dim, std::size_t p) {
    if (p > dim) throw ArgumentError("wedge_basis requires p <= dim");
    std::vector<WedgeIndex> out;
    WedgeIndex cur(p);
    for (std::size_t i = 0; i < p; ++i) cur[i] = static_cast<std::uint32_t>(i);
    while (true) {
        out.push_back(cur);
        std::size_t i = p;
        while (i > 0 && cur[i - 1] == dim - p + i - 1) --i;
        if (i == 0) break;
        ++cur[i - 1];
        for (std::size_t j = i; j < p; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

inline std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

struct BasisLabel {
    WedgeIndex wedge;
    Tuple multi;

    friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

/// Koszul flattening with labeled bases. Columns index wedge^p A (x) B*,
/// rows wedge^{p+1} A (x) C, both ordered by (wedge tuple, flat multi-index).
class FlatteningMatrix {
public:
    FlatteningMatrix(std::size_t dim_a, std::size_t p, FactorShape b_shape, FactorShape c_shape)
        : col_wedges_(wedge_basis(dim_a, p)),
          row_wedges_(wedge_basis(dim_a, p + 1)),
          b_shape_(std::move(b_shape)),
          c_shape_(std::move(c_shape)),
          matrix_(row_wedges_.size() * c_shape_.dim(), col_wedges_.size() * b_shape_.dim()) {
        for (std::size_t i = 0; i < col_wedges_.size(); ++i) col_pos_[col_wedges_[i]] = i;
        for (std::size_t i = 0; i < row_wedges_.size(); ++i) row_pos_[row_wedges_[i]] = i;
    }

    const SparseMatrix& matrix() const { return matrix_; }
    SparseMatrix& matrix() { return matrix_; }
    std::size_t rows() const { return matrix_.rows(); }
    std::size_t cols() const { return matrix_.cols(); }
    const FactorShape& b_shape() const { return b_shape_; }
    const FactorShape& c_shape() const { return c_shape_; }
    const std::vector<WedgeIndex>& col_wedges() const { return col_wedges_; }
    const std::vector<WedgeIndex>& row_wedges() const { return row_wedges_; }

    std::size_t col_wedge_position(const WedgeIndex& x) const { return col_pos_.at(x); }
    std::size_t row_wedge_position(const WedgeIndex& w) const { return row_pos_.at(w); }

    std::size_t col_index(const WedgeIndex& x, const Tuple& b) const {
        return col_pos_.at(x) * b_shape_.dim() + b_shape_.flat(b);
    }
    std::size_t row_index(const WedgeIndex& w, const Tuple& c) const {
        return row_pos_.at(w) * c_shape_.dim() + c_shape_.flat(c);
    }
    BasisLabel col_label(std::size_t col) const {
        return {col_wedges_.at(col / b_shape_.dim()), b_shape_.unflat(col % b_shape_.dim())};
    }
    BasisLabel row_label(std::size_t row) const {
        return {row_wedges_.at(row / c_shape_.dim()), c_shape_.unflat(row % c_shape_.dim())};
    }

    friend bool operator==(const FlatteningMatrix& x, const FlatteningMatrix& y) {
        return x.col_wedges_ == y.col_wedges_ && x.row_wedges_ == y.row_wedges_ && x.b_shape_ == y.b_shape_ &&
               x.c_shape_ == y.c_shape_ && x.matrix_ == y.matrix_;
    }

private:
    std::vector<WedgeIndex> col_wedges_;
    std::vector<WedgeIndex> row_wedges_;
    std::map<WedgeIndex, std::size_t> col_pos_;
    std::map<WedgeIndex, std::size_t> row_pos_;
    FactorShape b_shape_;
    FactorShape c_shape_;
    SparseMatrix matrix_;
};

/// p-th Koszul flattening on the A factor: X (x) beta_J collects
/// T^{IJK} (a_I ^ X) (x) c_K over the entries of T.
inline FlatteningMatrix koszul_flattening(const SparseTensor& t, std::size_t p) {
    const std::size_t dim_a = t.shape(0).dim();
    if (p + 1 > dim_a) throw ArgumentError("koszul_flattening requires p + 1 <= dim A");
    FlatteningMatrix out(dim_a, p, t.shape(1), t.shape(2));
    const std::size_t dim_b = t.shape(1).dim();
    const std::size_t dim_c = t.shape(2).dim();
    const auto& xs = out.col_wedges();
    for (const auto& [idx, v] : t.entries()) {
        const auto i = static_cast<std::uint32_t>(t.shape(0).flat(idx.a()));
        const std::size_t jb = t.shape(1).flat(idx.b());
        const std::size_t kc = t.shape(2).flat(idx.c());
        for (std::size_t xi = 0; xi < xs.size(); ++xi) {
            WedgeIndex w;
            w.reserve(p + 1);
            w.push_back(i);
            w.insert(w.end(), xs[xi].begin(), xs[xi].end());
            const auto sw = canonicalize(std::move(w));
            if (sw.sign == 0) continue;
            out.matrix().accumulate(out.row_wedge_position(sw.wedge) * dim_c + kc, xi * dim_b + jb, sw.sign * v);
        }
    }
    return out;
}

enum class Variant { Tq, TqMinus1, Sq };

inline const char* to_string(Variant v) {
    switch (v) {
    case Variant::Tq: return "Tq";
    case Variant::TqMinus1: return "Tq_minus_1";
    case Variant::Sq: return "Sq";
    }
    return "unknown";
}

inline Variant parse_variant(const std::string& s) {
    if (s == "Tq") return Variant::Tq;
    if (s == "Tq_minus_1") return Variant::TqMinus1;
    if (s == "Sq") return Variant::Sq;
    throw ArgumentError("unknown flattening variant '" + s + "'");
}

/// The tensor whose restricted flattening `variant` names, in dims (q+1)^m.
inline SparseTensor variant_tensor(std::uint32_t q, std::uint32_t m, Variant variant, FieldSpec field = FieldSpec{}) {
    switch (variant) {
    case Variant::Tq: return cw_power(q, m, field);
    case Variant::TqMinus1: return padded_cw_power(q - 1, q, m, field);
    case Variant::Sq: return difference_tensor(q, m, field);
    }
    throw ArgumentError("unknown flattening variant");
}

/// First Koszul flattening restricted to A' = <e0,e1,e2>: the compression
/// index of each A-tuple is evaluated inline, X runs over e0, e1, e2.
inline FlatteningMatrix restricted_flattening(const SparseTensor& t) {
    FlatteningMatrix out(3, 1, t.shape(1), t.shape(2));
    const std::size_t dim_b = t.shape(1).dim();
    const std::size_t dim_c = t.shape(2).dim();
    for (const auto& [idx, v] : t.entries()) {
        const auto e = compress_index(idx.a());
        if (!e) continue;
        const std::size_t jb = t.shape(1).flat(idx.b());
        const std::size_t kc = t.shape(2).flat(idx.c());
        for (std::uint32_t x = 0; x < 3; ++x) {
            if (x == *e) continue;
            // e ^ x, stored as the sorted pair; rows (0,1),(0,2),(1,2) -> 0,1,2.
            const std::uint32_t lo = std::min(x, *e);
            const std::uint32_t hi = std::max(x, *e);
            const std::size_t w = lo + hi - 1;
            const std::int64_t sign = *e < x ? 1 : -1;
            out.matrix().accumulate(w * dim_c + kc, x * dim_b + jb, sign * v);
        }
    }
    return out;
}

inline FlatteningMatrix restricted_flattening(std::uint32_t q, std::uint32_t m, Variant variant,
                                              FieldSpec field = FieldSpec{}) {
    if (q < 2) throw ArgumentError("restricted_flattening requires q >= 2");
    if (m < 1) throw ArgumentError("restricted_flattening requires m >= 1");
    return restricted_flattening(variant_tensor(q, m, variant, field));
}

/// Landsberg-Ottaviani: border rank >= ceil(rank / C(dim A - 1, p)) when dim A = 2p + 1.
inline std::size_t lo_bound(std::size_t rank, std::size_t dim_a, std::size_t p) {
    if (dim_a != 2 * p + 1) throw ArgumentError("lo_bound requires dim A = 2p + 1");
    const std::size_t denom = binomial(dim_a - 1, p);
    return (rank + denom - 1) / denom;
}

/// Best Landsberg-Ottaviani bound over `trials` seeded random integer
/// restrictions A -> k^{2p+1}. When dim A is already 2p+1 the first trial
/// is the identity. Ranks are taken over F_p, which never exceed the
/// rational rank, so every value returned is a valid lower bound.
inline std::size_t random_restriction_bound(const SparseTensor& t, std::size_t p, std::size_t trials,
                                            std::uint64_t seed, std::uint64_t prime = kDefaultPrime) {
    const std::size_t dim_a = t.shape(0).dim();
    const std::size_t target = 2 * p + 1;
    if (dim_a < target) throw ArgumentError("random_restriction_bound requires dim A >= 2p + 1");
    if (trials < 1) throw ArgumentError("random_restriction_bound requires trials >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> coef(-8, 8);
    std::size_t best = 0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        FactorMap phi(dim_a, target);
        if (trial == 0 && dim_a == target) {
            phi = FactorMap::identity(target);
        } else {
            for (std::size_t r = 0; r < target; ++r) {
                for (std::size_t c = 0; c < dim_a; ++c) phi.set(r, c, coef(rng));
            }
        }
        const auto flat = koszul_flattening(apply_factor_map(t, 0, phi), p);
        best = std::max(best, lo_bound(rank_mod_p(flat.matrix(), prime).rank, target, p));
    }
    return best;
}

} // namespace flatrank
