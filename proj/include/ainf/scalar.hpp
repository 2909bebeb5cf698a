#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ainf {

class Scalar;

/// Base field: the rationals or a prime field F_p.
class Field {
public:
    Field() = default;

    static Field rationals() { return Field{}; }
    /// Throws std::invalid_argument unless p is prime.
    static Field prime(std::uint32_t p);

    bool is_rational() const { return p_ == 0; }
    std::uint32_t characteristic() const { return p_; }

    Scalar zero() const;
    Scalar one() const;
    Scalar from_int(long v) const;
    /// Parses "a", "-a" or "a/b". Floats are rejected.
    Scalar parse(std::string_view text) const;

    std::string name() const;

    friend bool operator==(const Field&, const Field&) = default;

private:
    explicit Field(std::uint32_t p) : p_(p) {}
    std::uint32_t p_ = 0;
};

bool is_prime(std::uint64_t n);

/// Exact field element. Over F_p the value is kept reduced in [0, p).
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : value_(v) {}  // NOLINT: integer literals are scalars
    Scalar(mpq_class v, std::uint32_t modulus);

    std::uint32_t modulus() const { return modulus_; }
    const mpq_class& value() const { return value_; }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_one() const { return value_ == 1; }

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    /// Throws std::domain_error on zero.
    Scalar inverse() const;

    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// Canonical text form: "a" or "a/b" over Q, "a" in [0, p) over F_p.
    std::string to_string() const;

private:
    void adopt(std::uint32_t modulus);
    void reduce();

    mpq_class value_{0};
    std::uint32_t modulus_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

inline Scalar sign(int parity) { return (parity & 1) ? Scalar(-1) : Scalar(1); }

}  // namespace ainf
