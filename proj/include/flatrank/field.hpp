#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace flatrank {

/// Default elimination prime (largest prime below 2^30) and the independent
/// fallback used when a certificate needs a second opinion.
inline constexpr std::uint64_t kDefaultPrime = 1073741789ULL;
inline constexpr std::uint64_t kFallbackPrime = 1073741783ULL;

class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class BoundsError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1U) result = mulmod64(result, base, m);
        base = mulmod64(base, base, m);
        exp >>= 1U;
    }
    return result;
}

} // namespace detail

/// Deterministic Miller-Rabin, exact for every 64-bit input.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % small == 0) return n == small;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = detail::powmod64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = detail::mulmod64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

/// Scalar domain: a word-sized prime field or the rationals.
struct FieldSpec {
    enum class Kind { PrimeField, Rational };

    Kind kind = Kind::PrimeField;
    std::uint64_t prime = kDefaultPrime;

    static FieldSpec prime_field(std::uint64_t p) {
        // Elimination multiplies two residues in 64 bits.
        if (p <= 2 || p >= (1ULL << 32) || !is_prime(p)) {
            throw ArgumentError("field prime must be an odd prime below 2^32, got " + std::to_string(p));
        }
        return FieldSpec{Kind::PrimeField, p};
    }
    static FieldSpec rational() { return FieldSpec{Kind::Rational, 0}; }

    bool is_rational() const { return kind == Kind::Rational; }

    std::string to_string() const {
        return is_rational() ? std::string("Q") : "F_" + std::to_string(prime);
    }

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Canonical integer representative of `value` in `field`: symmetric residue
/// in (-p/2, p/2] for F_p, the value itself for Q.
inline std::int64_t normalize(std::int64_t value, const FieldSpec& field) {
    if (field.is_rational()) return value;
    const auto p = static_cast<std::int64_t>(field.prime);
    std::int64_t r = value % p;
    if (r < 0) r += p;
    if (r > p / 2) r -= p;
    return r;
}

/// Exact add/multiply on integer representatives, overflow-checked over Q.
inline std::int64_t field_add(std::int64_t a, std::int64_t b, const FieldSpec& field) {
    if (!field.is_rational()) {
        return normalize(a + b, field);
    }
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("integer coefficient overflow");
    return out;
}

inline std::int64_t field_mul(std::int64_t a, std::int64_t b, const FieldSpec& field) {
    if (!field.is_rational()) {
        const auto p = static_cast<__int128>(field.prime);
        auto r = static_cast<__int128>(a) * b % p;
        return normalize(static_cast<std::int64_t>(r), field);
    }
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("integer coefficient overflow");
    return out;
}

} // namespace flatrank
