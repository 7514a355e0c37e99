#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "dga/fpk.hpp"

namespace dga {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FieldMismatchError : Error {
    using Error::Error;
};
struct DimensionError : Error {
    using Error::Error;
};
struct InputError : Error {
    using Error::Error;
};

/* Exact rational arithmetic.  Elements are kept canonical (lowest terms,
 * positive denominator) by construction. */
class RationalField {
public:
    using Elt = mpq_class;

    static constexpr bool kIsPrime = false;

    Elt zero() const { return Elt(0); }
    Elt one() const { return Elt(1); }
    Elt from_int(long n) const { return Elt(n); }
    Elt from_fraction(long num, long den) const {
        if (den == 0) throw InputError("rational with zero denominator");
        Elt e(num, den);
        e.canonicalize();
        return e;
    }

    Elt add(const Elt& a, const Elt& b) const { return a + b; }
    Elt sub(const Elt& a, const Elt& b) const { return a - b; }
    Elt mul(const Elt& a, const Elt& b) const { return a * b; }
    Elt neg(const Elt& a) const { return -a; }
    Elt inv(const Elt& a) const {
        if (a == 0) throw Error("division by zero");
        return 1 / a;
    }
    Elt div(const Elt& a, const Elt& b) const { return mul(a, inv(b)); }

    bool is_zero(const Elt& a) const { return a == 0; }
    bool eq(const Elt& a, const Elt& b) const { return a == b; }

    /* y += c*x */
    void row_axpy(std::span<Elt> y, std::span<const Elt> x, const Elt& c) const {
        if (c == 0) return;
        for (std::size_t i = 0; i < y.size(); ++i)
            if (x[i] != 0) y[i] += c * x[i];
    }
    void row_scale(std::span<Elt> y, const Elt& c) const {
        for (auto& v : y)
            if (v != 0) v *= c;
    }

    std::string to_string(const Elt& a) const { return a.get_str(); }
    bool parse(const std::string& s, Elt& out) const {
        try {
            Elt e(s);
            e.canonicalize();
            out = e;
            return true;
        } catch (const std::invalid_argument&) {
            return false;
        }
    }

    std::string name() const { return "Q"; }
    std::uint32_t characteristic() const { return 0; }
    friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

namespace detail {
/* Deterministic Miller-Rabin, exact for n < 3'215'031'751. */
inline bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t q : {2u, 3u, 5u, 7u}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint32_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    auto powmod = [n](std::uint64_t b, std::uint32_t e) {
        std::uint64_t acc = 1;
        b %= n;
        while (e) {
            if (e & 1) acc = acc * b % n;
            b = b * b % n;
            e >>= 1;
        }
        return acc;
    };
    for (std::uint32_t a : {2u, 3u, 5u, 7u}) {
        std::uint64_t x = powmod(a, d);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < r && witness; ++i) {
            x = x * x % n;
            if (x == n - 1) witness = false;
        }
        if (witness) return false;
    }
    return true;
}
}  // namespace detail

/* The prime field F_p, p < 2^31.  Elements are uint32_t in [0, p).  Row
 * operations go through the fpk kernels (SIMD-dispatched for p < 2^26). */
class PrimeField {
public:
    using Elt = std::uint32_t;

    static constexpr bool kIsPrime = true;

    explicit PrimeField(std::uint32_t p) : p_(p) {
        if (p >= (1u << 31)) throw InputError("prime modulus must be < 2^31");
        if (!detail::is_prime_u32(p)) throw InputError("modulus " + std::to_string(p) + " is not prime");
    }

    std::uint32_t modulus() const { return p_; }

    Elt zero() const { return 0; }
    Elt one() const { return 1 % p_; }
    Elt from_int(long n) const {
        long r = n % static_cast<long>(p_);
        if (r < 0) r += p_;
        return static_cast<Elt>(r);
    }

    Elt add(Elt a, Elt b) const {
        std::uint32_t s = a + b;  // p < 2^31: no overflow
        return s >= p_ ? s - p_ : s;
    }
    Elt sub(Elt a, Elt b) const { return a >= b ? a - b : a + p_ - b; }
    Elt mul(Elt a, Elt b) const { return static_cast<Elt>(static_cast<std::uint64_t>(a) * b % p_); }
    Elt neg(Elt a) const { return a == 0 ? 0 : p_ - a; }
    Elt inv(Elt a) const {
        if (a == 0) throw Error("division by zero");
        // extended Euclid
        std::int64_t t = 0, newt = 1, r = p_, newr = a;
        while (newr != 0) {
            std::int64_t q = r / newr;
            t = std::exchange(newt, t - q * newt);
            r = std::exchange(newr, r - q * newr);
        }
        if (t < 0) t += p_;
        return static_cast<Elt>(t);
    }
    Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }

    bool is_zero(Elt a) const { return a == 0; }
    bool eq(Elt a, Elt b) const { return a == b; }

    void row_axpy(std::span<Elt> y, std::span<const Elt> x, Elt c) const {
        fpk::axpy(y.data(), x.data(), c, y.size(), p_);
    }
    void row_scale(std::span<Elt> y, Elt c) const {
        fpk::scale(y.data(), c, y.size(), p_);
    }

    std::string to_string(Elt a) const { return std::to_string(a); }
    bool parse(const std::string& s, Elt& out) const {
        try {
            std::size_t pos = 0;
            long v = std::stol(s, &pos);
            if (pos != s.size()) return false;
            out = from_int(v);
            return true;
        } catch (...) {
            return false;
        }
    }

    std::string name() const { return "F" + std::to_string(p_); }
    std::uint32_t characteristic() const { return p_; }
    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

private:
    std::uint32_t p_;
};

template <class F>
concept FieldType = requires(const F f, typename F::Elt a) {
    { f.zero() } -> std::same_as<typename F::Elt>;
    { f.add(a, a) } -> std::same_as<typename F::Elt>;
    { f.is_zero(a) } -> std::convertible_to<bool>;
};

}  // namespace dga
