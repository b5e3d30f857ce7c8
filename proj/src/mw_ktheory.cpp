#include "hypermw/mw_ktheory.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace hypermw {

namespace {

long checked_add(long a, long b) {
    long r;
    if (__builtin_add_overflow(a, b, &r)) throw Error("MW coefficient overflow");
    return r;
}

long checked_mul(long a, long b) {
    long r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error("MW coefficient overflow");
    return r;
}

bool has_steinberg_pair(const std::vector<Scalar>& s) {
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if ((s[i] + s[j]).is_one()) return true;
    return false;
}

// 2 eta S = -eta^2 [-1] S and 2 [-1] S = -eta [-1][-1] S, which vanish when
// [-1] S has a Steinberg pair.
bool two_torsion(const Monomial& m) {
    if (m.symbols.empty()) return false;
    if (m.eta < 1 && std::none_of(m.symbols.begin(), m.symbols.end(), [](const Scalar& x) { return x.is_minus_one(); }))
        return false;
    std::vector<Scalar> s = m.symbols;
    s.push_back(-Scalar::one(s.front().field()));
    return has_steinberg_pair(s);
}

void accumulate(std::map<Monomial, long>& out, const Monomial& m, long c) {
    if (c == 0) return;
    auto [it, inserted] = out.try_emplace(m, c);
    if (!inserted) it->second = checked_add(it->second, c);
    if (it->second != 0 && it->second != 1 && two_torsion(m)) it->second = ((it->second % 2) + 2) % 2;
    if (it->second == 0) out.erase(it);
}

void remove_one_minus_one(std::vector<Scalar>& s) {
    auto it = std::find_if(s.begin(), s.end(), [](const Scalar& x) { return x.is_minus_one(); });
    s.erase(it);
}

// Rewrites c * eta^m S into `out`. Rules, first match wins: [1] and Steinberg
// pairs vanish; for m >= 1 an extra [-1] trades for -2 eta^-1, and a repeated
// [a] becomes [-1][a]; for m = 0 repeats collapse the same way and symbols are
// sorted by [a][b] = -[b][a] - eta[-1][b][a]. 2-torsion is applied on insert.
void reduce(std::map<Monomial, long>& out, long c, int m, std::vector<Scalar> s) {
    if (c == 0) return;
    if (std::any_of(s.begin(), s.end(), [](const Scalar& x) { return x.is_one(); })) return;
    if (has_steinberg_pair(s)) return;

    if (m >= 1) {
        std::sort(s.begin(), s.end());
        auto n1 = std::count_if(s.begin(), s.end(), [](const Scalar& x) { return x.is_minus_one(); });
        if (n1 >= 1 && m >= 2) {
            remove_one_minus_one(s);
            reduce(out, checked_mul(-2, c), m - 1, std::move(s));
            return;
        }
        if (n1 >= 2) {
            remove_one_minus_one(s);
            reduce(out, checked_mul(-2, c), m - 1, std::move(s));
            return;
        }
        for (std::size_t i = 0; i + 1 < s.size(); ++i) {
            if (s[i] == s[i + 1] && !s[i].is_minus_one()) {
                s[i] = -Scalar::one(s[i].field());
                reduce(out, c, m, std::move(s));
                return;
            }
        }
        accumulate(out, Monomial{m, std::move(s)}, c);
        return;
    }

    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        if (s[i] == s[i + 1] && !s[i].is_minus_one()) {
            s[i] = -Scalar::one(s[i].field());
            reduce(out, c, 0, std::move(s));
            return;
        }
    }
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        if (s[i + 1] < s[i]) {
            std::swap(s[i], s[i + 1]);
            std::vector<Scalar> with_eta;
            with_eta.push_back(-Scalar::one(s[i].field()));
            with_eta.insert(with_eta.end(), s.begin(), s.end());
            reduce(out, -c, 0, std::move(s));
            reduce(out, -c, 1, std::move(with_eta));
            return;
        }
    }
    accumulate(out, Monomial{0, std::move(s)}, c);
}

} // namespace

std::strong_ordering Monomial::operator<=>(const Monomial& o) const {
    if (auto c = symbols.size() <=> o.symbols.size(); c != 0) return c;
    if (auto c = eta <=> o.eta; c != 0) return c;
    for (std::size_t i = 0; i < symbols.size(); ++i)
        if (auto c = symbols[i] <=> o.symbols[i]; c != 0) return c;
    return std::strong_ordering::equal;
}

MWElement MWElement::integer(Field f, long n) {
    MWElement r(f);
    if (n != 0) r.terms_[Monomial{}] = n;
    return r;
}

MWElement MWElement::monomial(Field f, long coeff, Monomial m) {
    MWElement r(f);
    for (const auto& s : m.symbols) {
        if (!(s.field() == f)) throw Error("mixed base fields");
        if (s.is_zero()) throw Error("symbol [0] is undefined");
    }
    if (m.eta < 0) throw Error("negative eta power");
    reduce(r.terms_, coeff, m.eta, std::move(m.symbols));
    return r;
}

MWElement MWElement::symbol(const Scalar& a) {
    if (a.is_zero()) throw Error("symbol [0] is undefined");
    return monomial(a.field(), 1, Monomial{0, {a}});
}

MWElement MWElement::eta(Field f) { return monomial(f, 1, Monomial{1, {}}); }

MWElement MWElement::bracket_form(const Scalar& a) {
    return one(a.field()) + eta(a.field()) * symbol(a);
}

MWElement MWElement::epsilon(Field f) {
    return -one(f) - eta(f) * symbol(-Scalar::one(f));
}

MWElement MWElement::epsilon_power(Field f, long n) {
    return (n % 2 == 0) ? one(f) : epsilon(f);
}

MWElement MWElement::log_expansion(const Scalar& a, const Scalar& b) {
    return symbol(a) + symbol(b) + eta(a.field()) * symbol(a) * symbol(b);
}

void MWElement::check_same(const MWElement& o) const {
    if (!(field_ == o.field_)) throw Error("mixed base fields in MW arithmetic");
}

MWElement MWElement::operator+(const MWElement& o) const {
    check_same(o);
    MWElement r = *this;
    for (const auto& [m, c] : o.terms_) accumulate(r.terms_, m, c);
    return r;
}

MWElement MWElement::operator-() const { return *this * -1L; }

MWElement MWElement::operator-(const MWElement& o) const { return *this + (-o); }

MWElement MWElement::operator*(long n) const {
    MWElement r(field_);
    if (n == 0) return r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, checked_mul(c, n));
    return r;
}

MWElement MWElement::operator*(const MWElement& o) const {
    check_same(o);
    MWElement r(field_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) {
            std::vector<Scalar> s = ma.symbols;
            s.insert(s.end(), mb.symbols.begin(), mb.symbols.end());
            reduce(r.terms_, checked_mul(ca, cb), ma.eta + mb.eta, std::move(s));
        }
    return r;
}

MWElement MWElement::homogeneous(int degree) const {
    MWElement r(field_);
    for (const auto& [m, c] : terms_)
        if (m.degree() == degree) r.terms_.emplace(m, c);
    return r;
}

std::vector<int> MWElement::degrees() const {
    std::set<int> d;
    for (const auto& [m, c] : terms_) d.insert(m.degree());
    return {d.begin(), d.end()};
}

MWElement mw_normalize(const MWElement& x) {
    MWElement r(x.field_);
    for (const auto& [m, c] : x.terms_) reduce(r.terms_, c, m.eta, m.symbols);
    return r;
}

std::string MWElement::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        long a = c < 0 ? -c : c;
        if (first) os << (c < 0 ? "-" : "");
        else os << (c < 0 ? " - " : " + ");
        first = false;
        std::vector<std::string> factors;
        if (m.eta == 1) factors.push_back("eta");
        else if (m.eta > 1) factors.push_back("eta^" + std::to_string(m.eta));
        for (const auto& s : m.symbols) factors.push_back("[" + s.to_string() + "]");
        if (factors.empty()) {
            os << a;
            continue;
        }
        if (a != 1) os << a << "*";
        for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const MWElement& x) { return os << x.to_string(); }

} // namespace hypermw
