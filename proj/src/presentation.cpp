#include "hypermw/presentation.hpp"

#include <algorithm>

namespace hypermw {

namespace {

using AtomWord = std::vector<int>;
using AtomElement = std::map<AtomWord, MWElement>;

template <class K>
void accumulate(std::map<K, MWElement>& m, const K& key, const MWElement& c) {
    auto it = m.find(key);
    if (it == m.end()) {
        MWElement v = canonical_coefficient(c);
        if (!v.empty()) m.emplace(key, std::move(v));
        return;
    }
    it->second = canonical_coefficient(it->second + c);
    if (it->second.empty()) m.erase(it);
}

AtomElement atom_mul(const AtomElement& a, const AtomElement& b) {
    AtomElement r;
    for (const auto& [wa, ca] : a)
        for (const auto& [wb, cb] : b) {
            AtomWord w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            accumulate(r, w, ca * twist(cb, wa.size()));
        }
    return r;
}

AtomElement atom_add(AtomElement a, const AtomElement& b) {
    for (const auto& [w, c] : b) accumulate(a, w, c);
    return a;
}

AtomElement left_mul(const MWElement& c, const AtomElement& a) {
    AtomElement r;
    for (const auto& [w, x] : a) accumulate(r, w, c * x);
    return r;
}

// Splits a generator into hyperplane atoms, one factor at a time.
AtomElement expand_unit(const Field& f, const Unit& u) {
    AtomElement x;
    MWElement s = MWElement::symbol(u.lambda);
    if (!s.empty()) x.emplace(AtomWord{}, s);
    MWElement eta = MWElement::eta(f);
    for (auto [i, n] : u.exponents) {
        AtomElement atom;
        atom.emplace(AtomWord{i}, n > 0 ? MWElement::one(f) : MWElement::epsilon(f));
        for (long k = 0; k < (n > 0 ? n : -n); ++k)
            x = atom_add(atom_add(x, atom), left_mul(eta, atom_mul(x, atom)));
    }
    return x;
}

AtomElement expand(const PresElement& x) {
    const Field& f = x.field();
    AtomElement out;
    for (const auto& [word, c] : x.terms()) {
        AtomElement acc;
        acc.emplace(AtomWord{}, c);
        for (const auto& u : word) acc = atom_mul(acc, expand_unit(f, u));
        out = atom_add(std::move(out), acc);
    }
    return out;
}

// Sorts an atom word into an increasing set: swaps cost eps, a square at
// position i becomes eps^i [-1].
std::pair<MWElement, IndexSet> sort_atoms(const Field& f, AtomWord w) {
    long eps = 0, squares = 0;
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            if (w[i] > w[i + 1]) {
                std::swap(w[i], w[i + 1]);
                ++eps;
                changed = true;
                break;
            }
            if (w[i] == w[i + 1]) {
                w.erase(w.begin() + static_cast<long>(i) + 1);
                eps += static_cast<long>(i);
                ++squares;
                changed = true;
                break;
            }
        }
    }
    MWElement c = MWElement::epsilon_power(f, eps);
    MWElement m1 = MWElement::symbol(-Scalar::one(f));
    for (long k = 0; k < squares; ++k) c = c * m1;
    return {c, w};
}

bool shortlex_less(const IndexSet& a, const IndexSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
}

MWElement minus_one_power(const Field& f, long k) {
    MWElement c = MWElement::one(f);
    MWElement m1 = MWElement::symbol(-Scalar::one(f));
    for (long i = 0; i < k; ++i) c = c * m1;
    return (k % 2) ? -c : c;
}

PresElement product_of_generators(const Field& f, const std::vector<Unit>& units) {
    return PresElement::word(units, MWElement::one(f));
}

bool all_zero(const NormalForm& x) { return nf_zero_test(x) == ZeroTest::Zero; }

} // namespace

MWElement canonical_coefficient(const MWElement& c) {
    return c.field().is_finite() ? reduce_finite(c) : mw_normalize(c);
}

MWElement twist(const MWElement& c, std::size_t n) {
    if (n % 2 == 0) return c;
    MWElement even(c.field()), odd(c.field());
    for (const auto& [m, k] : c.terms()) {
        MWElement t = MWElement::monomial(c.field(), k, m);
        if (m.degree() % 2) odd += t;
        else even += t;
    }
    return even + MWElement::epsilon(c.field()) * odd;
}

PresElement PresElement::coefficient(const MWElement& c) {
    PresElement r(c.field());
    r.add({}, c);
    return r;
}

PresElement PresElement::generator(const Unit& u) {
    return word({u}, MWElement::one(u.lambda.field()));
}

PresElement PresElement::word(const Word& w, const MWElement& c) {
    PresElement r(c.field());
    for (const auto& u : w)
        if (!(u.lambda.field() == c.field())) throw Error("unit over a different field");
    r.add(w, c);
    return r;
}

void PresElement::add(const Word& w, const MWElement& c) {
    if (!(c.field() == field_)) throw Error("mixed base fields in presentation arithmetic");
    accumulate(terms_, w, c);
}

PresElement PresElement::operator+(const PresElement& o) const {
    PresElement r = *this;
    for (const auto& [w, c] : o.terms_) r.add(w, c);
    return r;
}

PresElement PresElement::operator-() const {
    PresElement r(field_);
    for (const auto& [w, c] : terms_) r.add(w, -c);
    return r;
}

PresElement PresElement::operator-(const PresElement& o) const { return *this + (-o); }

PresElement PresElement::operator*(const PresElement& o) const {
    if (!(field_ == o.field_)) throw Error("mixed base fields in presentation arithmetic");
    PresElement r(field_);
    for (const auto& [wa, ca] : terms_)
        for (const auto& [wb, cb] : o.terms_) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            r.add(w, ca * twist(cb, wa.size()));
        }
    return r;
}

PresElement operator*(const MWElement& c, const PresElement& x) { return PresElement::coefficient(c) * x; }

ZeroTest nf_zero_test(const NormalForm& x) {
    bool unknown = false;
    for (const auto& [s, c] : x) {
        auto z = is_zero(c);
        if (z == ZeroTest::NonZero) return z;
        if (z == ZeroTest::Unknown) unknown = true;
    }
    return unknown ? ZeroTest::Unknown : ZeroTest::Zero;
}

NormalForm nf_add(const NormalForm& a, const NormalForm& b, const Field&) {
    NormalForm r = a;
    for (const auto& [s, c] : b) accumulate(r, s, c);
    return r;
}

NormalForm nf_sub(const NormalForm& a, const NormalForm& b, const Field&) {
    NormalForm r = a;
    for (const auto& [s, c] : b) accumulate(r, s, -c);
    return r;
}

PresElement nf_to_element(const NormalForm& x, const Field& f) {
    PresElement r(f);
    for (const auto& [s, c] : x) {
        Word w;
        for (int i : s) w.push_back(Unit::hyperplane(f, i));
        r += PresElement::word(w, c);
    }
    return r;
}

PresElement r_polynomial_formal(const Field& field, const std::vector<Unit>& f) {
    if (f.empty()) throw Error("R needs at least one unit");
    const std::size_t n = f.size();
    if (n > 16) throw Error("too many units for R");
    const long t = static_cast<long>(n) - 1;
    PresElement r(field);
    auto word_without = [&](std::uint32_t omitted) {
        Word w;
        for (std::size_t j = 0; j < n; ++j)
            if (!(omitted >> j & 1)) w.push_back(f[j]);
        return w;
    };
    for (std::size_t i = 0; i < n; ++i)
        r += PresElement::word(word_without(1u << i), MWElement::epsilon_power(field, t + static_cast<long>(i)));
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        int size = __builtin_popcount(mask);
        if (size < 2) continue;
        r += PresElement::word(word_without(mask), minus_one_power(field, size - 1));
    }
    return r;
}

PresElement r_polynomial(const Arrangement& a, const std::vector<Unit>& f) {
    for (const auto& u : f) a.validate_unit(u);
    if (!units_sum_numerator(a, f).empty()) throw Error("R needs units summing to zero");
    return r_polynomial_formal(a.field(), f);
}

NormalForm free_reduce(const PresElement& x) {
    NormalForm out;
    for (const auto& [w, c] : expand(x)) {
        auto [k, s] = sort_atoms(x.field(), w);
        accumulate(out, s, c * k);
    }
    return out;
}

namespace {

bool r_minus_one_check(const Field& field, const std::vector<Unit>& f, const MWElement& factor) {
    std::vector<Unit> g = f;
    g.push_back(Unit::constant(-Scalar::one(field)));
    PresElement d = r_polynomial_formal(field, g) - factor * product_of_generators(field, f);
    return all_zero(free_reduce(d));
}

} // namespace

bool r_minus_one_identity(const Field& field, const std::vector<Unit>& f) {
    return r_minus_one_check(field, f, MWElement::epsilon(field));
}

bool r_minus_one_plain_identity(const Field& field, const std::vector<Unit>& f) {
    return r_minus_one_check(field, f, MWElement::one(field));
}

std::string to_string(RelationFamily f) {
    switch (f) {
    case RelationFamily::ConstIdent: return "const-ident";
    case RelationFamily::Logarithm: return "logarithm";
    case RelationFamily::Steinberg: return "steinberg";
    case RelationFamily::Square: return "square";
    case RelationFamily::AntiComm: return "anticommutativity";
    case RelationFamily::RPoly: return "r-polynomial";
    }
    return "?";
}

namespace {

std::vector<Unit> circuit_r_units(const Circuit& c) {
    std::vector<Unit> f;
    for (std::size_t j = 0; j < c.members.size(); ++j) f.push_back(Unit{c.lambda[j], {{c.members[j], 1}}});
    if (!c.central()) f.push_back(Unit::constant(c.lambda0));
    return f;
}

std::vector<Unit> circuit_steinberg_units(const Circuit& c) {
    std::vector<Unit> f;
    if (!c.central()) {
        Scalar inv = c.lambda0.inv();
        for (std::size_t j = 0; j < c.members.size(); ++j)
            f.push_back(Unit{-c.lambda[j] * inv, {{c.members[j], 1}}});
        return f;
    }
    Scalar inv = c.lambda[0].inv();
    for (std::size_t j = 1; j < c.members.size(); ++j)
        f.push_back(Unit{-c.lambda[j] * inv, {{c.members[j], 1}, {c.members[0], -1}}});
    return f;
}

std::vector<Unit> sample_constants(const Field& f) {
    std::vector<Unit> out;
    for (const char* text : {"-1", "2", "3", "1/2", "5"}) {
        Scalar s = Scalar::parse(f, text);
        if (s.is_zero()) continue;
        Unit u = Unit::constant(s);
        if (std::find(out.begin(), out.end(), u) == out.end()) out.push_back(u);
    }
    return out;
}

std::vector<Unit> atom_units(const Arrangement& a) {
    std::vector<Unit> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        out.push_back(Unit::hyperplane(a.field(), static_cast<int>(i)));
        out.push_back(Unit::hyperplane(a.field(), static_cast<int>(i), -1));
    }
    Scalar two(a.field(), 2);
    if (!two.is_one() && !two.is_zero()) out.push_back(Unit::constant(two));
    return out;
}

void common_generators(const Arrangement& a, std::vector<RelationInstance>& out) {
    const Field& f = a.field();
    for (const auto& u : sample_constants(f))
        out.push_back({RelationFamily::ConstIdent, {u},
                       PresElement::generator(u) - PresElement::coefficient(MWElement::symbol(u.lambda))});
    auto atoms = atom_units(a);
    for (const auto& x : atoms)
        for (const auto& y : atoms) {
            PresElement e = PresElement::generator(unit_mul(x, y)) - PresElement::generator(x) -
                            PresElement::generator(y) -
                            MWElement::eta(f) * product_of_generators(f, {x, y});
            out.push_back({RelationFamily::Logarithm, {x, y}, e});
        }
    for (std::size_t i = 0; i < a.size(); ++i) {
        Unit u = Unit::hyperplane(f, static_cast<int>(i));
        PresElement e = product_of_generators(f, {u, u}) -
                        MWElement::symbol(-Scalar::one(f)) * PresElement::generator(u);
        out.push_back({RelationFamily::Square, {u}, e});
    }
}

} // namespace

PresElement circuit_r_polynomial(const Arrangement& a, const Circuit& c) {
    return r_polynomial(a, circuit_r_units(c));
}

PresElement circuit_steinberg(const Arrangement& a, const Circuit& c) {
    auto units = circuit_steinberg_units(c);
    auto check = units;
    check.push_back(Unit::constant(-Scalar::one(a.field())));
    if (!units_sum_numerator(a, check).empty()) throw Error("Steinberg units do not sum to 1");
    return product_of_generators(a.field(), units);
}

std::vector<RelationInstance> j_generators(const Arrangement& a) {
    std::vector<RelationInstance> out;
    common_generators(a, out);
    for (const auto& c : a.circuits())
        out.push_back({RelationFamily::Steinberg, circuit_steinberg_units(c), circuit_steinberg(a, c)});
    return out;
}

std::vector<RelationInstance> j_prime_generators(const Arrangement& a) {
    std::vector<RelationInstance> out;
    common_generators(a, out);
    const Field& f = a.field();
    auto atoms = atom_units(a);
    for (const auto& x : atoms)
        for (const auto& y : atoms) {
            PresElement e = product_of_generators(f, {x, y}) -
                            MWElement::epsilon(f) * product_of_generators(f, {y, x});
            out.push_back({RelationFamily::AntiComm, {x, y}, e});
        }
    for (const auto& c : a.circuits())
        out.push_back({RelationFamily::RPoly, circuit_r_units(c), circuit_r_polynomial(a, c)});
    return out;
}

Presentation::Presentation(Arrangement a, EngineVariant v) : arr_(std::move(a)), variant_(v) {
    for (const auto& s : arr_.nbc_sets()) nbc_.insert(s);
}

const std::vector<CircuitRule>& Presentation::rules() const {
    if (rules_) return *rules_;
    std::vector<CircuitRule> affine, central;
    const auto& cs = arr_.circuits();
    for (std::size_t k = 0; k < cs.size(); ++k) (cs[k].central() ? central : affine).push_back(build_rule(k));
    affine.insert(affine.end(), central.begin(), central.end());
    rules_ = std::move(affine);
    return *rules_;
}

CircuitRule Presentation::build_rule(std::size_t index) const {
    const Circuit& c = arr_.circuits()[index];
    const Field& f = arr_.field();
    PresElement rel(f);
    if (variant_ == EngineVariant::RPoly) {
        rel = circuit_r_polynomial(arr_, c);
    } else {
        rel = circuit_steinberg(arr_, c);
        if (c.central()) {
            // <-f_0>^t removes the eta-multiple of the full circuit word
            Unit minus_f0{-c.lambda[0], {{c.members[0], 1}}};
            PresElement twist_unit = PresElement::coefficient(MWElement::one(f)) +
                                     MWElement::eta(f) * PresElement::generator(minus_f0);
            for (std::size_t j = 1; j < c.members.size(); ++j) rel = twist_unit * rel;
        }
    }
    NormalForm reduced = free_reduce(rel);
    CircuitRule rule{index, c.central() ? c.broken() : c.members, MWElement(f), {}};
    auto it = reduced.find(rule.target);
    if (it == reduced.end()) throw Error("circuit relation does not contain its target word");
    rule.leading = it->second;
    // <a> and eps are involutions, so the leading coefficient is its own inverse
    const MWElement& v = rule.leading;
    if (is_zero(v * v - MWElement::one(f)) == ZeroTest::NonZero)
        throw Error("leading coefficient of a circuit relation is not an involution");
    for (const auto& [s, k] : reduced) {
        if (s == rule.target) continue;
        if (!shortlex_less(s, rule.target)) {
            if (is_zero(k) != ZeroTest::Zero) throw Error("circuit relation has a word above its target");
            continue;
        }
        accumulate(rule.replacement, s, -(v * k));
    }
    return rule;
}

NormalForm Presentation::reduce_atom_word(const std::vector<int>& w) const {
    auto [k, s] = sort_atoms(arr_.field(), w);
    NormalForm out;
    for (const auto& [b, c] : reduce_set(s)) accumulate(out, b, k * c);
    return out;
}

const NormalForm& Presentation::reduce_set(const IndexSet& s) const {
    if (auto it = memo_.find(s); it != memo_.end()) return it->second;
    const Field& f = arr_.field();
    NormalForm out;
    if (nbc_.count(s)) {
        out.emplace(s, MWElement::one(f));
        return memo_.emplace(s, std::move(out)).first->second;
    }
    if (!in_progress_.insert(s).second) throw Error("circuit rewriting revisited a word");
    const CircuitRule* rule = nullptr;
    for (const auto& r : rules())
        if (std::includes(s.begin(), s.end(), r.target.begin(), r.target.end())) {
            rule = &r;
            break;
        }
    if (!rule) throw Error("no circuit rule applies to a non-nbc word");
    IndexSet rest;
    std::set_difference(s.begin(), s.end(), rule->target.begin(), rule->target.end(), std::back_inserter(rest));
    // bring the target to the front
    long swaps = 0;
    for (int t : rule->target)
        for (int r : rest)
            if (r < t) ++swaps;
    MWElement sign = MWElement::epsilon_power(f, swaps);
    for (const auto& [k, c] : rule->replacement) {
        AtomWord w = k;
        w.insert(w.end(), rest.begin(), rest.end());
        MWElement front = sign * c;
        for (const auto& [b, d] : reduce_atom_word(w)) accumulate(out, b, front * d);
    }
    in_progress_.erase(s);
    return memo_.emplace(s, std::move(out)).first->second;
}

NormalForm Presentation::normal_form(const PresElement& x) const {
    if (!(x.field() == arr_.field())) throw Error("element over a different field");
    for (const auto& [w, c] : x.terms())
        for (const auto& u : w) arr_.validate_unit(u);
    NormalForm out;
    for (const auto& [w, c] : expand(x))
        for (const auto& [b, d] : reduce_atom_word(w)) accumulate(out, b, c * d);
    return out;
}

NormalForm Presentation::multiply(const PresElement& x, const PresElement& y) const {
    return normal_form(x * y);
}

std::vector<IndexSet> basis(const Arrangement& a) {
    if (a.size() == 0) return {IndexSet{}};
    int y = static_cast<int>(a.size()) - 1;
    auto out = basis(a.deletion(y));
    Restriction r = a.restriction(y);
    for (const auto& t : basis(r.restricted)) {
        IndexSet s;
        for (int j : t) s.push_back(r.lift(j).exponents.begin()->first);
        std::sort(s.begin(), s.end());
        s.push_back(y);
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), shortlex_less);
    return out;
}

std::vector<long> rank(const Arrangement& a) { return degree_counts(basis(a)); }

PresElement restriction_boundary(const Presentation& p, const PresElement& x) {
    const Arrangement& a = p.arrangement();
    if (a.size() == 0) throw Error("boundary needs a hyperplane");
    const Field& f = a.field();
    int y = static_cast<int>(a.size()) - 1;
    Restriction r = a.restriction(y);
    PresElement out(f);
    for (const auto& [s, c] : p.normal_form(x)) {
        if (s.empty() || s.back() != y) continue;
        Word w;
        for (std::size_t k = 0; k + 1 < s.size(); ++k) w.push_back(r.restrict_unit(Unit::hyperplane(f, s[k])));
        out += PresElement::word(w, c);
    }
    return out;
}

} // namespace hypermw
