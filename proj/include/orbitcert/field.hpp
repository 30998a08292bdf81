#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace orbitcert {

/// Base class of every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

/// Raised when an operation needs characteristic zero (radicals, trace forms).
struct UnsupportedField : Error {
    using Error::Error;
};

enum class FieldKind { Rational, Prime };

/// Runtime description of the ground field; the library itself is templated
/// on `RationalField` / `PrimeField` and this is what the CLI dispatches on.
struct FieldSpec {
    FieldKind kind = FieldKind::Rational;
    std::uint32_t p = 0;

    bool operator==(const FieldSpec&) const = default;
};

inline bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Field of rational numbers backed by GMP; values are always canonical.
struct RationalField {
    using Scalar = mpq_class;

    static constexpr bool characteristic_zero = true;

    Scalar zero() const { return Scalar(0); }
    Scalar one() const { return Scalar(1); }
    Scalar from_int(long v) const { return Scalar(v); }
    static bool is_zero(const Scalar& a) { return sgn(a) == 0; }
    static bool is_one(const Scalar& a) { return a == 1; }
    static Scalar inv(const Scalar& a) { return Scalar(1) / a; }

    FieldSpec spec() const { return {FieldKind::Rational, 0}; }

    /// "n" or "n/d", d > 0, gcd(|n|, d) = 1.
    static std::string format(const Scalar& a) { return a.get_str(10); }

    /// Accepts only the canonical spelling produced by `format`.
    Scalar parse(std::string_view text) const {
        std::string s(text);
        Scalar q;
        if (s.empty() || q.set_str(s, 10) != 0)
            throw ParseError("malformed rational '" + s + "'");
        if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
        q.canonicalize();
        if (q.get_str(10) != s)
            throw ParseError("rational '" + s + "' is not in lowest terms with positive denominator");
        return q;
    }

    bool operator==(const RationalField&) const = default;
};

/// Element of F_p. Carries its modulus so plain operators work in generic code.
struct Fp {
    std::uint32_t v = 0;
    std::uint32_t p = 2;

    friend Fp operator+(Fp a, Fp b) {
        std::uint64_t s = std::uint64_t(a.v) + b.v;
        return {std::uint32_t(s >= a.p ? s - a.p : s), a.p};
    }
    friend Fp operator-(Fp a, Fp b) {
        return {a.v >= b.v ? a.v - b.v : std::uint32_t(a.v + (a.p - b.v)), a.p};
    }
    friend Fp operator-(Fp a) { return {a.v == 0 ? 0u : a.p - a.v, a.p}; }
    friend Fp operator*(Fp a, Fp b) {
        return {std::uint32_t(std::uint64_t(a.v) * b.v % a.p), a.p};
    }
    Fp& operator+=(Fp b) { return *this = *this + b; }
    Fp& operator-=(Fp b) { return *this = *this - b; }
    Fp& operator*=(Fp b) { return *this = *this * b; }
    friend bool operator==(Fp a, Fp b) { return a.v == b.v; }

    Fp pow(std::uint64_t e) const {
        Fp base = *this, acc{1u % p, p};
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }
    Fp inverse() const { return pow(p - 2); }
    friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
    Fp& operator/=(Fp b) { return *this = *this / b; }
};

/// Prime field F_p with 2 <= p < 2^31.
struct PrimeField {
    using Scalar = Fp;

    static constexpr bool characteristic_zero = false;

    std::uint32_t p = 2;

    PrimeField() = default;
    explicit PrimeField(std::uint32_t modulus) : p(modulus) {
        if (!is_prime(p) || p >= (1u << 31))
            throw Error("field modulus " + std::to_string(p) + " is not a prime below 2^31");
    }

    Scalar zero() const { return {0, p}; }
    Scalar one() const { return {1, p}; }
    Scalar from_int(long v) const {
        long r = v % long(p);
        if (r < 0) r += long(p);
        return {std::uint32_t(r), p};
    }
    static bool is_zero(const Scalar& a) { return a.v == 0; }
    static bool is_one(const Scalar& a) { return a.v == 1; }
    static Scalar inv(const Scalar& a) { return a.inverse(); }

    FieldSpec spec() const { return {FieldKind::Prime, p}; }

    static std::string format(const Scalar& a) { return std::to_string(a.v); }

    /// Decimal string in [0, p).
    Scalar parse(std::string_view text) const {
        if (text.empty() || text.size() > 10)
            throw ParseError("malformed F_p scalar '" + std::string(text) + "'");
        std::uint64_t v = 0;
        for (char c : text) {
            if (c < '0' || c > '9')
                throw ParseError("malformed F_p scalar '" + std::string(text) + "'");
            v = v * 10 + std::uint64_t(c - '0');
        }
        if (v >= p || (text.size() > 1 && text[0] == '0'))
            throw ParseError("F_p scalar '" + std::string(text) + "' not canonical in [0," +
                             std::to_string(p) + ")");
        return {std::uint32_t(v), p};
    }

    bool operator==(const PrimeField&) const = default;
};

template <class F>
concept ExactField = requires(const F& f, const typename F::Scalar& a) {
    { f.zero() } -> std::same_as<typename F::Scalar>;
    { f.one() } -> std::same_as<typename F::Scalar>;
    { F::is_zero(a) } -> std::same_as<bool>;
    { F::inv(a) } -> std::same_as<typename F::Scalar>;
};

}  // namespace orbitcert
