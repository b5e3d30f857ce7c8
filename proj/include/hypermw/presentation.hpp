#pragma once

// The algebra generated over K^MW_*(K) by symbols (f), f a unit on the
// complement, modulo the relation ideal. MW coefficients sit on the left of
// words; moving a coefficient c of degree d past a word of length n costs
// eps^(n d).
//
// Normal form:
//   1. split every generator into hyperplane atoms:
//        (lambda g) = [lambda] + <lambda>(g),  (gh) = (g) + (h) + eta (g)(h),
//        (phi^-1) = eps (phi)
//   2. sort atoms, (a)(b) = eps (b)(a) and (a)(a) = [-1](a)
//   3. rewrite sets that are not nbc with one rule per circuit, solved for its
//      largest word, until only nbc words remain.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hypermw/arrangement.hpp"
#include "hypermw/finite_mw.hpp"
#include "hypermw/mw_ktheory.hpp"

namespace hypermw {

using Word = std::vector<Unit>;

class PresElement {
public:
    explicit PresElement(Field f) : field_(f) {}

    static PresElement coefficient(const MWElement& c);
    static PresElement generator(const Unit& u);
    static PresElement word(const Word& w, const MWElement& c);

    const Field& field() const { return field_; }
    const std::map<Word, MWElement>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    PresElement operator+(const PresElement& o) const;
    PresElement operator-(const PresElement& o) const;
    PresElement operator-() const;
    /// Concatenation product with the coefficient twist.
    PresElement operator*(const PresElement& o) const;
    PresElement& operator+=(const PresElement& o) { return *this = *this + o; }
    PresElement& operator-=(const PresElement& o) { return *this = *this - o; }

    bool operator==(const PresElement& o) const { return field_ == o.field_ && terms_ == o.terms_; }

private:
    void add(const Word& w, const MWElement& c);
    Field field_;
    std::map<Word, MWElement> terms_;
};

/// Left multiplication by a coefficient.
PresElement operator*(const MWElement& c, const PresElement& x);

/// The c' with (word of length n) * c = c' * (word).
MWElement twist(const MWElement& c, std::size_t n);

/// Coefficients of nbc words; keys are hyperplane index sets.
using NormalForm = std::map<IndexSet, MWElement>;

/// Canonical coefficient: the finite-field representative over F_q, the
/// rewrite normal form over Q.
MWElement canonical_coefficient(const MWElement& c);

/// Zero if every coefficient is Zero, NonZero if one is NonZero.
ZeroTest nf_zero_test(const NormalForm& x);

NormalForm nf_add(const NormalForm& a, const NormalForm& b, const Field& f);
NormalForm nf_sub(const NormalForm& a, const NormalForm& b, const Field& f);
PresElement nf_to_element(const NormalForm& x, const Field& f);

/// R(f_0, ..., f_t); throws unless sum f_i = 0 on the complement.
PresElement r_polynomial(const Arrangement& a, const std::vector<Unit>& f);
/// The same formula without the side condition.
PresElement r_polynomial_formal(const Field& field, const std::vector<Unit>& f);

/// Reduction by relations (1), (2), anticommutativity and (4) only: words
/// become index sets, no circuit rule is applied.
NormalForm free_reduce(const PresElement& x);

/// Whether R(f_1, ..., f_t, -1) - eps (f_1)...(f_t) reduces to 0 without
/// circuit relations.
bool r_minus_one_identity(const Field& field, const std::vector<Unit>& f);
/// Whether R(f_1, ..., f_t, -1) - (f_1)...(f_t) reduces to 0 without circuit
/// relations.
bool r_minus_one_plain_identity(const Field& field, const std::vector<Unit>& f);

enum class RelationFamily { ConstIdent, Logarithm, Steinberg, Square, AntiComm, RPoly };

std::string to_string(RelationFamily f);

struct RelationInstance {
    RelationFamily family;
    std::vector<Unit> units;
    PresElement element;
};

/// Generators of the ideal in the Steinberg form: sampled constants, the
/// logarithm rule on atom pairs, one Steinberg product per circuit, and one
/// square relation per hyperplane.
std::vector<RelationInstance> j_generators(const Arrangement& a);
/// Generators in the R form: as above with anticommutativity on atom pairs
/// and one R-polynomial per circuit in place of the Steinberg products.
std::vector<RelationInstance> j_prime_generators(const Arrangement& a);

/// The R-polynomial of a circuit, scaled as in Circuit.
PresElement circuit_r_polynomial(const Arrangement& a, const Circuit& c);
/// The Steinberg product of a circuit: sum of the units is 1.
PresElement circuit_steinberg(const Arrangement& a, const Circuit& c);

enum class EngineVariant {
    RPoly,      // circuit rules from R-polynomials
    Steinberg,  // circuit rules from Steinberg products
};

struct CircuitRule {
    std::size_t circuit = 0;
    IndexSet target;
    /// Coefficient of the target word in the relation.
    MWElement leading;
    /// target word = replacement
    NormalForm replacement;
};

class Presentation {
public:
    explicit Presentation(Arrangement a, EngineVariant v = EngineVariant::RPoly);

    const Arrangement& arrangement() const { return arr_; }
    EngineVariant variant() const { return variant_; }

    NormalForm normal_form(const PresElement& x) const;
    NormalForm multiply(const PresElement& x, const PresElement& y) const;
    /// Normal form of a single set of hyperplane atoms in increasing order.
    const NormalForm& reduce_set(const IndexSet& s) const;

    const std::vector<CircuitRule>& rules() const;

private:
    NormalForm reduce_atom_word(const std::vector<int>& w) const;
    CircuitRule build_rule(std::size_t index) const;

    Arrangement arr_;
    EngineVariant variant_;
    std::set<IndexSet> nbc_;
    mutable std::optional<std::vector<CircuitRule>> rules_;
    mutable std::map<IndexSet, NormalForm> memo_;
    mutable std::set<IndexSet> in_progress_;
};

/// Basis monomials from deletion-restriction on the last hyperplane, as index
/// sets sorted by (size, lexicographic).
std::vector<IndexSet> basis(const Arrangement& a);
/// Per-degree ranks of basis(a).
std::vector<long> rank(const Arrangement& a);

/// Component of the normal form along the last hyperplane Y, with the units of
/// each word restricted to Y. The result lives on a.restriction(last).
PresElement restriction_boundary(const Presentation& p, const PresElement& x);

} // namespace hypermw
