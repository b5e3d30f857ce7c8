#pragma once

// Affine hyperplane arrangements in A^N over an exact field: deletion,
// restriction, the intersection poset, circuits, nbc sets, and the unit
// group of the complement.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypermw/linalg.hpp"
#include "hypermw/scalar.hpp"

namespace hypermw {

/// Affine form c0 + c1 x1 + ... + cN xN, normalized so that the first nonzero
/// linear coefficient is 1.
class Hyperplane {
public:
    /// Returns the normalized form and the factor s with raw = s * normalized.
    static std::pair<Hyperplane, Scalar> normalize(Row raw);

    const Row& coeffs() const { return coeffs_; }
    std::size_t dim() const { return coeffs_.size() - 1; }
    const Scalar& constant() const { return coeffs_[0]; }
    /// 1-based coordinate index of the leading (pivot) variable.
    std::size_t pivot() const;

    /// Value of the form at a point (length dim()).
    Scalar evaluate(const Row& point) const;

    /// Human-readable form such as "x1 + x2 - 1".
    std::string to_string() const;

    bool operator==(const Hyperplane&) const = default;

private:
    explicit Hyperplane(Row c) : coeffs_(std::move(c)) {}
    Row coeffs_;
};

/// Subset of hyperplane indices (0-based, strictly increasing).
using IndexSet = std::vector<int>;

struct Flat {
    Matrix equations;   // reduced augmented system, columns [c1..cN | c0]
    std::size_t codim = 0;
    IndexSet members;   // every hyperplane containing the flat
    long moebius = 0;
};

struct Circuit {
    IndexSet members;
    /// Dependency sum_j lambda[j] * phi_{members[j]} + lambda0 = 0 with all
    /// lambda[j] nonzero. Central circuits are scaled with lambda[0] = 1,
    /// affine ones with lambda0 = 1.
    std::vector<Scalar> lambda;
    Scalar lambda0;

    bool central() const { return lambda0.is_zero(); }
    /// The circuit minus its least element (meaningful for central circuits).
    IndexSet broken() const { return IndexSet(members.begin() + 1, members.end()); }
};

/// f = lambda * prod_i phi_i^{n_i}; exponents keyed by 0-based hyperplane
/// index, zero exponents never stored.
struct Unit {
    Scalar lambda;
    std::map<int, long> exponents;

    static Unit constant(Scalar c);
    static Unit hyperplane(Field f, int index, long power = 1);

    bool is_constant() const { return exponents.empty(); }
    long exponent(int index) const;
    auto operator<=>(const Unit& o) const {
        if (auto c = lambda <=> o.lambda; c != 0) return c;
        return exponents <=> o.exponents;
    }
    bool operator==(const Unit&) const = default;
};

Unit unit_mul(const Unit& a, const Unit& b);
Unit unit_inverse(const Unit& a);

class Arrangement;

/// What phi_i becomes on the restricted hyperplane.
struct RestrictedImage {
    enum class Kind { Self, Constant, Form } kind = Kind::Self;
    Scalar value;  // the constant, or mu with phi_i|_Y = mu * phi'_target
    int target = -1;
};

struct Restriction;

class Arrangement {
public:
    Arrangement(Field f, std::size_t dim, std::vector<Hyperplane> hyperplanes);
    /// Normalizes raw rows; rejects zero linear parts and duplicates.
    static Arrangement from_rows(Field f, std::size_t dim, const std::vector<Row>& rows);

    const Field& field() const { return field_; }
    std::size_t dim() const { return dim_; }
    std::size_t size() const { return hyperplanes_.size(); }
    const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }
    const Hyperplane& operator[](std::size_t i) const { return hyperplanes_.at(i); }

    /// Index of a normalized hyperplane, if present.
    std::optional<int> find(const Hyperplane& h) const;

    Arrangement deletion(int index) const;
    Restriction restriction(int index) const;

    /// Whether the hyperplanes in s have a common point.
    bool intersects(const IndexSet& s) const;
    /// Rank of the linear parts of s (codimension of the intersection when
    /// nonempty).
    std::size_t linear_rank(const IndexSet& s) const;

    /// Flats sorted by (codim, members); the ambient space comes first.
    std::vector<Flat> intersection_poset() const;
    /// Coefficients of sum_X |mu(X)| t^codim(X), index = degree.
    std::vector<long> poincare_polynomial() const;
    const std::vector<Circuit>& circuits() const;
    /// Sets with nonempty independent intersection containing no broken
    /// circuit of a central circuit, sorted by (size, lexicographic).
    std::vector<IndexSet> nbc_sets() const;

    void validate_unit(const Unit& u) const;

    std::string to_string() const;

private:
    Field field_;
    std::size_t dim_;
    std::vector<Hyperplane> hyperplanes_;
    mutable std::optional<std::vector<Circuit>> circuits_;
};

struct Restriction {
    Arrangement restricted;
    int removed = -1;
    /// Coordinate (1-based) eliminated to identify the hyperplane with A^{N-1}.
    std::size_t pivot = 0;
    std::vector<RestrictedImage> images;  // one per original hyperplane

    /// Pushes a unit of the deleted arrangement through the restriction;
    /// throws if the unit has a zero or pole along the removed hyperplane.
    Unit restrict_unit(const Unit& u) const;
    /// Minimal-index preimage of each restricted hyperplane with the scalar
    /// folded in, so that restrict_unit(lift(j)) = phi'_j.
    Unit lift(int restricted_index) const;
};

/// Per-degree counts of an index-set family.
std::vector<long> degree_counts(const std::vector<IndexSet>& sets);

/// Multivariate polynomial over the base field, used to test identities of
/// units such as sum f_i = 0.
using Polynomial = std::map<std::vector<long>, Scalar>;

/// Sum of units as a polynomial after clearing the common denominator
/// prod phi_i^{d_i}; the sum vanishes iff the polynomial is zero.
Polynomial units_sum_numerator(const Arrangement& a, const std::vector<Unit>& units);

} // namespace hypermw
