#pragma once

#include <flatrank/field.hpp>
#include <flatrank/matrix.hpp>

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace flatrank {

/// Dense mod-p elimination is used up to this many rows/columns.
inline constexpr std::size_t kDenseMaxDim = 5000;
/// Fraction-free elimination refuses larger matrices.
inline constexpr std::size_t kExactCap = 2500;

enum class RankMethod { DenseElimination, SparseElimination, FractionFree, Bareiss };

inline const char* to_string(RankMethod m) {
    switch (m) {
    case RankMethod::DenseElimination: return "dense-elimination";
    case RankMethod::SparseElimination: return "sparse-elimination";
    case RankMethod::FractionFree: return "fraction-free";
    case RankMethod::Bareiss: return "bareiss";
    }
    return "unknown";
}

struct RankResult {
    std::size_t rank = 0;
    FieldSpec field{};
    RankMethod method = RankMethod::DenseElimination;
    bool certified = false;
    std::string justification;
    /// Every prime an elimination ran over, in order.
    std::vector<std::uint64_t> primes;
    std::size_t rows = 0;
    std::size_t cols = 0;
};

namespace detail {

inline std::uint64_t residue(std::int64_t v, std::uint64_t p) {
    auto r = v % static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
}

inline std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) { return powmod64(a, p - 2, p); }

inline void require_prime(std::uint64_t p) {
    if (!is_prime(p)) throw ArgumentError("modulus " + std::to_string(p) + " is not prime");
    if (p >= (1ULL << 32)) throw ArgumentError("modulus must be below 2^32");
}

using ModRow = std::vector<std::pair<std::uint32_t, std::uint64_t>>;

// row -= factor * pivot over F_p; both sorted by column.
inline ModRow axpy_mod(const ModRow& row, std::uint64_t factor, const ModRow& pivot, std::uint64_t p) {
    ModRow out;
    out.reserve(row.size() + pivot.size());
    const std::uint64_t neg = (p - factor) % p;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < row.size() || j < pivot.size()) {
        if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
            out.push_back(row[i++]);
        } else if (i == row.size() || pivot[j].first < row[i].first) {
            out.emplace_back(pivot[j].first, neg * pivot[j].second % p);
            ++j;
        } else {
            const std::uint64_t v = (row[i].second + neg * pivot[j].second) % p;
            if (v) out.emplace_back(row[i].first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

using ZRow = std::vector<std::pair<std::uint32_t, mpz_class>>;

// lead_p * row - lead_r * pivot, then divided by its content.
inline ZRow combine_primitive(const ZRow& row, const ZRow& pivot) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), row.front().second.get_mpz_t(), pivot.front().second.get_mpz_t());
    const mpz_class a = pivot.front().second / g;
    const mpz_class b = row.front().second / g;
    ZRow out;
    out.reserve(row.size() + pivot.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < row.size() || j < pivot.size()) {
        if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
            out.emplace_back(row[i].first, a * row[i].second);
            ++i;
        } else if (i == row.size() || pivot[j].first < row[i].first) {
            out.emplace_back(pivot[j].first, -b * pivot[j].second);
            ++j;
        } else {
            mpz_class v = a * row[i].second - b * pivot[j].second;
            if (v != 0) out.emplace_back(row[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    if (!out.empty()) {
        mpz_class content = 0;
        for (const auto& [c, v] : out) {
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
            if (content == 1) break;
        }
        if (content > 1) {
            for (auto& [c, v] : out) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), content.get_mpz_t());
        }
    }
    return out;
}

template <typename Row>
std::vector<std::size_t> sparse_insertion_order(const std::vector<Row>& rows) {
    // Short rows first keeps fill-in low; ties keep the original order.
    std::vector<std::size_t> order(rows.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return rows[x].size() < rows[y].size(); });
    return order;
}

} // namespace detail

/// Rank over F_p by dense row-echelon elimination. Pivot: first nonzero
/// row in each column. Only the nonzero tail of the pivot row is swept.
inline std::size_t dense_rank_mod_p(const SparseMatrix& m, std::uint64_t p) {
    detail::require_prime(p);
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    if (rows == 0 || cols == 0) return 0;
    std::vector<std::uint32_t> a(rows * cols, 0);
    for (const auto& [rc, v] : m.entries()) {
        a[rc.first * cols + rc.second] = static_cast<std::uint32_t>(detail::residue(v, p));
    }
    std::size_t rank = 0;
    std::vector<std::size_t> support;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && a[piv * cols + c] == 0) ++piv;
        if (piv == rows) continue;
        std::uint32_t* prow = &a[rank * cols];
        if (piv != rank) std::swap_ranges(prow, prow + cols, &a[piv * cols]);
        const std::uint64_t inv = detail::inverse_mod(prow[c], p);
        support.clear();
        for (std::size_t j = c; j < cols; ++j) {
            if (prow[j]) {
                prow[j] = static_cast<std::uint32_t>(prow[j] * inv % p);
                if (j > c) support.push_back(j);
            }
        }
        for (std::size_t i = rank + 1; i < rows; ++i) {
            std::uint32_t* row = &a[i * cols];
            const std::uint64_t f = row[c];
            if (!f) continue;
            row[c] = 0;
            const std::uint64_t neg = p - f;
            for (std::size_t j : support) {
                row[j] = static_cast<std::uint32_t>((row[j] + neg * prow[j]) % p);
            }
        }
        ++rank;
    }
    return rank;
}

/// Rank over F_p by sparse row insertion into an echelon basis.
inline std::size_t sparse_rank_mod_p(const SparseMatrix& m, std::uint64_t p) {
    detail::require_prime(p);
    std::vector<detail::ModRow> rows(m.rows());
    for (const auto& [rc, v] : m.entries()) {
        const auto r = detail::residue(v, p);
        if (r) rows[rc.first].emplace_back(static_cast<std::uint32_t>(rc.second), r);
    }
    std::vector<std::int64_t> pivot_of(m.cols(), -1);
    std::vector<detail::ModRow> basis;
    for (std::size_t idx : detail::sparse_insertion_order(rows)) {
        detail::ModRow row = std::move(rows[idx]);
        while (!row.empty()) {
            const auto lead = row.front().first;
            if (pivot_of[lead] < 0) {
                const std::uint64_t inv = detail::inverse_mod(row.front().second, p);
                for (auto& [c, v] : row) v = v * inv % p;
                pivot_of[lead] = static_cast<std::int64_t>(basis.size());
                basis.push_back(std::move(row));
                break;
            }
            row = detail::axpy_mod(row, row.front().second, basis[static_cast<std::size_t>(pivot_of[lead])], p);
        }
    }
    return basis.size();
}

/// Rank over Q by fraction-free sparse elimination on primitive integer rows.
inline std::size_t fraction_free_rank(const SparseMatrix& m) {
    std::vector<detail::ZRow> rows(m.rows());
    for (const auto& [rc, v] : m.entries()) {
        rows[rc.first].emplace_back(static_cast<std::uint32_t>(rc.second), mpz_class(static_cast<long>(v)));
    }
    std::vector<std::int64_t> pivot_of(m.cols(), -1);
    std::vector<detail::ZRow> basis;
    for (std::size_t idx : detail::sparse_insertion_order(rows)) {
        detail::ZRow row = std::move(rows[idx]);
        while (!row.empty()) {
            const auto lead = row.front().first;
            if (pivot_of[lead] < 0) {
                pivot_of[lead] = static_cast<std::int64_t>(basis.size());
                basis.push_back(std::move(row));
                break;
            }
            row = detail::combine_primitive(row, basis[static_cast<std::size_t>(pivot_of[lead])]);
        }
    }
    return basis.size();
}

/// Rank over Q by dense Bareiss elimination. Every intermediate entry is a
/// minor of the input, so each division is exact.
inline std::size_t bareiss_rank(const SparseMatrix& m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::vector<mpz_class> a(rows * cols);
    for (const auto& [rc, v] : m.entries()) a[rc.first * cols + rc.second] = static_cast<long>(v);
    mpz_class prev = 1;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && a[piv * cols + c] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != rank) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[rank * cols + j]);
        }
        const mpz_class pv = a[rank * cols + c];
        for (std::size_t i = rank + 1; i < rows; ++i) {
            const mpz_class f = a[i * cols + c];
            for (std::size_t j = c + 1; j < cols; ++j) {
                mpz_class v = pv * a[i * cols + j] - f * a[rank * cols + j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a[i * cols + j] = std::move(v);
            }
            a[i * cols + c] = 0;
        }
        prev = pv;
        ++rank;
    }
    return rank;
}

/// Rank over F_p: dense elimination up to kDenseMaxDim, sparse beyond.
inline RankResult rank_mod_p(const SparseMatrix& m, std::uint64_t p = kDefaultPrime) {
    detail::require_prime(p);
    RankResult r;
    r.rows = m.rows();
    r.cols = m.cols();
    r.field = FieldSpec{FieldSpec::Kind::PrimeField, p};
    r.primes = {p};
    if (std::max(m.rows(), m.cols()) <= kDenseMaxDim) {
        r.method = RankMethod::DenseElimination;
        r.rank = dense_rank_mod_p(m, p);
    } else {
        r.method = RankMethod::SparseElimination;
        r.rank = sparse_rank_mod_p(m, p);
    }
    r.justification = "mod-p";
    return r;
}

/// Rank over Q. Certified unconditionally.
inline RankResult rank_exact(const SparseMatrix& m, std::size_t cap = kExactCap) {
    if (std::max(m.rows(), m.cols()) > cap) {
        throw CapacityError("exact rank limited to " + std::to_string(cap) + "x" + std::to_string(cap) +
                            " (matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                            "); use multi-prime mode");
    }
    RankResult r;
    r.rows = m.rows();
    r.cols = m.cols();
    r.field = FieldSpec::rational();
    r.method = RankMethod::FractionFree;
    r.rank = fraction_free_rank(m);
    r.certified = true;
    r.justification = "exact";
    return r;
}

struct CertifyPolicy {
    std::uint64_t primary = kDefaultPrime;
    std::uint64_t fallback = kFallbackPrime;
    std::size_t exact_cap = kExactCap;
};

/// Rank with a certificate. `claimed_upper` must be an upper bound on the
/// rational rank known a priori (twice a border-rank upper bound for a
/// Koszul flattening with dim A = 3, p = 1). A mod-p rank reaching it pins
/// the rational rank, since specialization can only drop rank.
inline RankResult rank_certified(const SparseMatrix& m, std::size_t claimed_upper, const CertifyPolicy& policy = {}) {
    RankResult first = rank_mod_p(m, policy.primary);
    if (first.rank == claimed_upper) {
        first.certified = true;
        first.justification = "sandwich";
        return first;
    }
    RankResult second = rank_mod_p(m, policy.fallback);
    std::vector<std::uint64_t> primes{policy.primary, policy.fallback};
    if (std::max(m.rows(), m.cols()) <= policy.exact_cap) {
        RankResult exact = rank_exact(m, policy.exact_cap);
        exact.primes = primes;
        return exact;
    }
    RankResult out = first.rank >= second.rank ? first : second;
    out.primes = primes;
    out.certified = false;
    out.justification = first.rank == second.rank ? "certified-probabilistic" : "prime-disagreement";
    return out;
}

} // namespace flatrank
