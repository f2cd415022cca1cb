#pragma once

// Concrete tensors: the little Coppersmith-Winograd tensor, its elementary
// summands W_j, Kronecker powers, difference tensors, the compression map
// A^{(x)m} -> A' = <e0,e1,e2>, and the matrix multiplication tensor.

#include <flatrank/tensor.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace flatrank {

struct CwParams {
    std::uint32_t q = 1;
    std::uint32_t m = 1;

    CwParams(std::uint32_t q_, std::uint32_t m_) : q(q_), m(m_) {
        if (q < 1 || m < 1) throw ArgumentError("CW parameters require q >= 1 and m >= 1");
    }
};

inline Shape3 cw_shapes(std::uint32_t q, std::size_t m = 1) {
    const auto s = FactorShape::uniform(q + 1, m);
    return {s, s, s};
}

/// W_j = a0 b_j c_j + a_j b0 c_j + a_j b_j c0 in (k^{q+1})^{(x)3}.
inline SparseTensor w_tensor(std::uint32_t q, std::uint32_t j, FieldSpec field = FieldSpec{}) {
    if (j < 1 || j > q) throw ArgumentError("w_tensor requires 1 <= j <= q");
    return make_tensor(cw_shapes(q),
                       {{{{0}, {j}, {j}}, 1}, {{{j}, {0}, {j}}, 1}, {{{j}, {j}, {0}}, 1}}, field);
}

inline SparseTensor cw_tensor(std::uint32_t q, FieldSpec field = FieldSpec{}) {
    if (q < 1) throw ArgumentError("cw_tensor requires q >= 1");
    SparseTensor t(cw_shapes(q), field);
    for (std::uint32_t j = 1; j <= q; ++j) {
        const auto w = w_tensor(q, j, field);
        for (const auto& [idx, v] : w.entries()) t.accumulate(idx, v);
    }
    return t;
}

/// T_cw,q^{(x)m}.
inline SparseTensor cw_power(std::uint32_t q, std::uint32_t m, FieldSpec field = FieldSpec{}) {
    CwParams params(q, m);
    return kronecker_power(cw_tensor(params.q, field), params.m);
}

/// T_cw,q'^{(x)m} zero-padded into the ambient space of parameter q >= q'.
inline SparseTensor padded_cw_power(std::uint32_t q_inner, std::uint32_t q, std::uint32_t m,
                                    FieldSpec field = FieldSpec{}) {
    return pad(cw_power(q_inner, m, field), cw_shapes(q, m));
}

/// S_q^{(m)} = T_cw,q^{(x)m} - T_cw,q-1^{(x)m}.
inline SparseTensor difference_tensor(std::uint32_t q, std::uint32_t m, FieldSpec field = FieldSpec{}) {
    if (q < 2) throw ArgumentError("difference_tensor requires q >= 2");
    if (m < 1) throw ArgumentError("difference_tensor requires m >= 1");
    return subtract(cw_power(q, m, field), padded_cw_power(q - 1, q, m, field));
}

/// Target basis element of the compression map for one A-tuple:
/// 0 if all slots are 0; 1 (resp. 2) if exactly one slot is 1 (resp. 2)
/// and the rest are 0; nullopt otherwise.
inline std::optional<std::uint32_t> compress_index(const Tuple& a) {
    std::optional<std::uint32_t> hit;
    for (auto v : a) {
        if (v == 0) continue;
        if (hit || v > 2) return std::nullopt;
        hit = v;
    }
    return hit.value_or(0);
}

/// The compression map as an explicit (q+1)^m -> 3 factor map.
inline FactorMap phi_map(std::uint32_t q, std::uint32_t m) {
    if (q < 2) throw ArgumentError("phi_map requires q >= 2");
    if (m < 1) throw ArgumentError("phi_map requires m >= 1");
    const auto shape = FactorShape::uniform(q + 1, m);
    FactorMap phi(shape.dim(), 3);
    for (std::size_t col = 0; col < shape.dim(); ++col) {
        if (auto e = compress_index(shape.unflat(col))) phi.set(*e, col, 1);
    }
    return phi;
}

/// M_<n>: entry 1 at ((i,j),(j,k),(k,i)), pairs flattened as i*n+j.
inline SparseTensor matmul_tensor(std::uint32_t n, FieldSpec field = FieldSpec{}) {
    if (n < 1) throw ArgumentError("matmul_tensor requires n >= 1");
    const auto d = n * n;
    SparseTensor t({FactorShape::plain(d), FactorShape::plain(d), FactorShape::plain(d)}, field);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) {
            for (std::uint32_t k = 0; k < n; ++k) {
                t.accumulate(MultiIndex{{i * n + j}, {j * n + k}, {k * n + i}}, 1);
            }
        }
    }
    return t;
}

} // namespace flatrank
