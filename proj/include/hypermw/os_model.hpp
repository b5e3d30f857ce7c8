#pragma once

// Exterior algebra on the hyperplane classes with coefficients in Z[eta]/2eta,
// the twisted divisor map, the ideal L generated by empty intersections and
// boundaries of dependent families, and the comparison maps with the
// presentation modulo constants.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "hypermw/arrangement.hpp"
#include "hypermw/mw_ktheory.hpp"
#include "hypermw/presentation.hpp"

namespace hypermw {

/// z + sum_{m in eta} eta^m in Z[eta]/2eta.
class EtaInt {
public:
    EtaInt() = default;
    EtaInt(long z) : z_(z) {}
    static EtaInt eta(int power = 1);

    long integer_part() const { return z_; }
    const std::set<int>& eta_powers() const { return eta_; }
    bool is_zero() const { return z_ == 0 && eta_.empty(); }

    EtaInt operator+(const EtaInt& o) const;
    EtaInt operator-() const;
    EtaInt operator-(const EtaInt& o) const { return *this + (-o); }
    EtaInt operator*(const EtaInt& o) const;
    bool operator==(const EtaInt&) const = default;

    std::string to_string() const;

private:
    long z_ = 0;
    std::set<int> eta_;
};

class ExtElement {
public:
    ExtElement() = default;
    static ExtElement monomial(IndexSet s, EtaInt c = 1);
    /// The class Y_i (0-based index).
    static ExtElement generator(int i) { return monomial({i}); }

    const std::map<IndexSet, EtaInt>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    /// Largest monomial size present.
    std::size_t top_degree() const;

    ExtElement operator+(const ExtElement& o) const;
    ExtElement operator-() const;
    ExtElement operator-(const ExtElement& o) const { return *this + (-o); }
    ExtElement& operator+=(const ExtElement& o) { return *this = *this + o; }
    bool operator==(const ExtElement&) const = default;

    /// Text such as "Y1^Y3 + eta*Y1^Y2" with 1-based indices.
    std::string to_string() const;

private:
    void add(const IndexSet& s, const EtaInt& c);
    std::map<IndexSet, EtaInt> terms_;
};

ExtElement operator*(const EtaInt& c, const ExtElement& x);
ExtElement wedge(const ExtElement& x, const ExtElement& y);

/// Image in Z[eta]/2eta modulo constants: [lambda] -> 0, eta -> eta.
EtaInt collapse(const MWElement& c);

/// x + y + eta x^y: the twisted divisor of a product from its factors.
ExtElement tilde_div_product(const ExtElement& x, const ExtElement& y);
/// Folds the factors of lambda * prod phi_i^{n_i} in increasing index order.
ExtElement tilde_div(const Unit& f);

/// Generators of L: monomials with empty intersection and alternating
/// boundary sums of intersecting families of deficient codimension.
std::vector<ExtElement> l_generators(const Arrangement& a);

class OSModel {
public:
    explicit OSModel(Arrangement a);

    const Arrangement& arrangement() const { return arr_; }

    /// Representative supported on nbc monomials.
    ExtElement nf_mod_L(const ExtElement& x) const;
    /// Wedge of twisted divisors with collapsed coefficients, reduced mod L.
    ExtElement psi(const PresElement& x) const;
    /// Y_{i_1} ^ ... ^ Y_{i_k} -> (phi_{i_1}) ... (phi_{i_k}).
    PresElement phi(const IndexSet& monomial) const;
    PresElement phi(const ExtElement& x) const;
    /// Collapsed coefficients of a normal form.
    ExtElement collapse_nf(const NormalForm& x) const;
    /// Per-degree number of nbc monomials.
    std::vector<long> rank_mod_L() const;

private:
    const ExtElement& reduce_monomial(const IndexSet& s) const;

    Arrangement arr_;
    std::set<IndexSet> nbc_;
    mutable std::map<IndexSet, ExtElement> memo_;
};

} // namespace hypermw
