#pragma once

// Symbolic Milnor-Witt K-theory of the base field. Elements are integer
// combinations of monomials eta^m [a_1]...[a_k] kept in the form produced by
// mw_normalize, an oriented version of the defining relations:
//
//   [1] -> 0
//   [a][1-a] -> 0                      (any pair, after reordering)
//   eta^m [-1] S -> -2 eta^(m-1) S      (m >= 2)
//   eta^m [-1][-1] S -> -2 eta^(m-1) [-1] S   (m >= 1)
//   [a][a] -> [-1][a]
//   [a][b] -> eps [b][a] = -[b][a] - eta [-1][b][a]   (b before a, m = 0)
//
// eta commutes with symbols, and once eta is present symbols commute because
// eps * eta = eta. Symbols are atoms: [ab] is never split automatically; use
// log_expansion where a factorization is known.

#include <compare>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "hypermw/scalar.hpp"

namespace hypermw {

struct Monomial {
    int eta = 0;
    std::vector<Scalar> symbols;

    int degree() const { return static_cast<int>(symbols.size()) - eta; }

    bool operator==(const Monomial&) const = default;
    std::strong_ordering operator<=>(const Monomial& o) const;
};

class MWElement {
public:
    explicit MWElement(Field f) : field_(f) {}

    static MWElement integer(Field f, long n);
    static MWElement zero(Field f) { return MWElement(f); }
    static MWElement one(Field f) { return integer(f, 1); }
    /// [a]; throws for a = 0.
    static MWElement symbol(const Scalar& a);
    static MWElement eta(Field f);
    /// <a> = 1 + eta [a]
    static MWElement bracket_form(const Scalar& a);
    /// eps = -<-1> = -1 - eta [-1]
    static MWElement epsilon(Field f);
    /// [ab] expanded as [a] + [b] + eta [a][b].
    static MWElement log_expansion(const Scalar& a, const Scalar& b);
    /// A raw monomial, normalized.
    static MWElement monomial(Field f, long coeff, Monomial m);

    const Field& field() const { return field_; }
    const std::map<Monomial, long>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    MWElement operator+(const MWElement& o) const;
    MWElement operator-(const MWElement& o) const;
    MWElement operator-() const;
    MWElement operator*(const MWElement& o) const;
    MWElement operator*(long n) const;
    MWElement& operator+=(const MWElement& o) { return *this = *this + o; }
    MWElement& operator-=(const MWElement& o) { return *this = *this - o; }
    MWElement& operator*=(const MWElement& o) { return *this = *this * o; }

    /// eps^n
    static MWElement epsilon_power(Field f, long n);

    /// Part of the element in the given degree (k - m).
    MWElement homogeneous(int degree) const;
    std::vector<int> degrees() const;

    /// Parseable text, e.g. "1 - 2*eta*[-1] + [3]".
    std::string to_string() const;

    bool operator==(const MWElement& o) const { return field_ == o.field_ && terms_ == o.terms_; }

private:
    friend MWElement mw_normalize(const MWElement& x);
    void check_same(const MWElement& o) const;
    Field field_;
    std::map<Monomial, long> terms_;
};

/// Applies the rewrite rules to a fixpoint. Idempotent.
MWElement mw_normalize(const MWElement& x);

std::ostream& operator<<(std::ostream& os, const MWElement& x);

} // namespace hypermw
