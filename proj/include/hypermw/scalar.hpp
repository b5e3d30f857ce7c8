#pragma once

// Exact arithmetic for the base field: the rationals (GMP-backed) and prime
// fields F_p with p odd.

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hypermw {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Field {
public:
    enum class Kind { Rationals, Prime };

    static Field rationals() { return Field(Kind::Rationals, 0); }
    /// Throws for p = 2 or composite p.
    static Field prime(std::uint64_t p);
    /// Parses "Q" or "GF(p)".
    static Field parse(std::string_view text);

    Kind kind() const { return kind_; }
    bool is_rational() const { return kind_ == Kind::Rationals; }
    bool is_finite() const { return kind_ == Kind::Prime; }
    std::uint64_t characteristic() const { return p_; }

    std::string to_string() const;

    bool operator==(const Field&) const = default;

private:
    Field(Kind k, std::uint64_t p) : kind_(k), p_(p) {}
    Kind kind_;
    std::uint64_t p_;
};

bool is_prime(std::uint64_t n);

class Scalar;

/// Square class of a nonzero scalar. Over F_p this is Square/NonSquare; over
/// Q it is the squarefree integer representing a * (Q^x)^2.
struct SquareClass {
    bool finite = false;
    bool square = false;  // F_p only
    mpz_class squarefree; // Q only

    bool operator==(const SquareClass& o) const {
        return finite == o.finite && square == o.square && squarefree == o.squarefree;
    }
};

class Scalar {
public:
    Scalar() : field_(Field::rationals()) {}
    Scalar(Field f, long value);
    Scalar(Field f, const mpq_class& value);

    static Scalar zero(Field f) { return Scalar(f, 0); }
    static Scalar one(Field f) { return Scalar(f, 1); }
    /// Parses "3/4", "-5", "7" in the given field.
    static Scalar parse(Field f, std::string_view text);

    const Field& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;
    bool is_minus_one() const;

    /// Canonical value over Q.
    const mpq_class& rational() const { return q_; }
    /// Canonical residue in [0, p).
    std::uint64_t residue() const { return r_; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const { return *this * o.inv(); }
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    /// Throws on zero.
    Scalar inv() const;
    std::optional<Scalar> try_inv() const;
    Scalar pow(long e) const;

    SquareClass square_class() const;

    std::string to_string() const;

    bool operator==(const Scalar& o) const;
    /// Total order used for canonical layouts: -1 first, then by value
    /// (numeric over Q, residue over F_p).
    std::strong_ordering operator<=>(const Scalar& o) const;

private:
    void check_same(const Scalar& o) const;
    Field field_;
    mpq_class q_;
    std::uint64_t r_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

} // namespace hypermw
