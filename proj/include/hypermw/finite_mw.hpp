#pragma once

// Exact evaluation of Milnor-Witt K-theory over a prime field F_q:
//   degree >= 2  ->  0
//   degree 1     ->  F_q^x
//   degree 0     ->  GW(F_q) = (rank, discriminant)
//   degree < 0   ->  W(F_q), a group of order 4
// and the zero test built on it.

#include <cstdint>
#include <map>
#include <string>

#include "hypermw/mw_ktheory.hpp"

namespace hypermw {

/// Element of GW(F_q) by rank and discriminant square class.
struct GWClass {
    long rank = 0;
    bool disc_square = true;

    GWClass operator+(const GWClass& o) const;
    GWClass operator*(const GWClass& o) const;
    GWClass times(long n) const;
    bool operator==(const GWClass&) const = default;
};

/// Element of W(F_q), stored as its lift to GW with rank 0 or 1.
class WittClass {
public:
    explicit WittClass(std::uint64_t q) : q_(q) {}
    /// Class of a GW element modulo the hyperbolic plane.
    static WittClass of(std::uint64_t q, const GWClass& g);

    const GWClass& lift() const { return lift_; }
    bool is_zero() const { return lift_.rank == 0 && lift_.disc_square; }
    /// Additive order (1, 2 or 4).
    int order() const;

    WittClass operator+(const WittClass& o) const;
    WittClass operator*(const WittClass& o) const;
    bool operator==(const WittClass& o) const { return q_ == o.q_ && lift_ == o.lift_; }

private:
    std::uint64_t q_;
    GWClass lift_;
};

/// Graded value of an MW element over F_q.
class FiniteValue {
public:
    explicit FiniteValue(std::uint64_t q) : q_(q) {}

    std::uint64_t q() const { return q_; }
    /// Degree 1 component as a residue (1 means zero).
    std::uint64_t unit() const { return unit_; }
    const GWClass& gw() const { return gw_; }
    /// Component in degree d < 0.
    WittClass witt(int d) const;
    const std::map<int, WittClass>& witt_components() const { return witt_; }

    void add_unit(std::uint64_t a);
    void add_gw(const GWClass& g) { gw_ = gw_ + g; }
    void add_witt(int d, const WittClass& w);

    bool is_zero() const;
    FiniteValue operator*(const FiniteValue& o) const;
    bool operator==(const FiniteValue& o) const;
    std::string to_string() const;

private:
    std::uint64_t q_;
    std::uint64_t unit_ = 1;
    GWClass gw_;
    std::map<int, WittClass> witt_;  // only nonzero entries
};

/// Throws unless x lives over a prime field.
FiniteValue eval_finite_field(const MWElement& x);
/// Evaluates an element over Q after reducing its scalars mod p.
FiniteValue eval_mod_prime(const MWElement& x, std::uint64_t p);

/// Canonical representative of x over F_q; equal values give equal output.
MWElement reduce_finite(const MWElement& x);

/// Canonical MW representative of a value.
MWElement canonical_element(const Field& f, const FiniteValue& v);

/// Least nonsquare of F_q in scalar order (-1 when it is a nonsquare).
Scalar canonical_nonsquare(const Field& f);

enum class ZeroTest { Zero, NonZero, Unknown };

std::string to_string(ZeroTest z);

/// Zero if the normal form is empty, NonZero if some finite-field image is
/// nonzero, Unknown otherwise. Over Q the element is reduced mod at least
/// three primes not dividing any numerator or denominator.
ZeroTest is_zero(const MWElement& x);

} // namespace hypermw
