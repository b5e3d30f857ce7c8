#include "hypermw/finite_mw.hpp"

#include <sstream>

namespace hypermw {

namespace {

bool minus_one_is_square(std::uint64_t q) { return q % 4 == 1; }

bool odd(long n) { return n % 2 != 0; }

bool is_square_residue(std::uint64_t a, std::uint64_t q) {
    return Scalar(Field::prime(q), static_cast<long>(a)).square_class().square;
}

} // namespace

GWClass GWClass::operator+(const GWClass& o) const {
    return {rank + o.rank, disc_square == o.disc_square};
}

// (r, d) * (s, e) = (rs, d^s e^r)
GWClass GWClass::operator*(const GWClass& o) const {
    bool nonsq = (odd(o.rank) && !disc_square) != (odd(rank) && !o.disc_square);
    return {rank * o.rank, !nonsq};
}

GWClass GWClass::times(long n) const { return {rank * n, disc_square || !odd(n)}; }

WittClass WittClass::of(std::uint64_t q, const GWClass& g) {
    // subtract k hyperbolic planes (2, -1) to bring the rank into {0, 1}
    long r = ((g.rank % 2) + 2) % 2;
    long k = (g.rank - r) / 2;
    bool flip = odd(k) && !minus_one_is_square(q);
    WittClass w(q);
    w.lift_ = {r, g.disc_square != flip};
    return w;
}

int WittClass::order() const {
    if (is_zero()) return 1;
    return (*this + *this).is_zero() ? 2 : 4;
}

WittClass WittClass::operator+(const WittClass& o) const { return of(q_, lift_ + o.lift_); }
WittClass WittClass::operator*(const WittClass& o) const { return of(q_, lift_ * o.lift_); }

WittClass FiniteValue::witt(int d) const {
    auto it = witt_.find(d);
    return it == witt_.end() ? WittClass(q_) : it->second;
}

void FiniteValue::add_unit(std::uint64_t a) {
    unit_ = static_cast<std::uint64_t>(static_cast<unsigned __int128>(unit_) * a % q_);
}

void FiniteValue::add_witt(int d, const WittClass& w) {
    WittClass s = witt(d) + w;
    if (s.is_zero()) witt_.erase(d);
    else witt_.insert_or_assign(d, s);
}

bool FiniteValue::is_zero() const { return unit_ == 1 && gw_ == GWClass{} && witt_.empty(); }

bool FiniteValue::operator==(const FiniteValue& o) const {
    return q_ == o.q_ && unit_ == o.unit_ && gw_ == o.gw_ && witt_ == o.witt_;
}

FiniteValue FiniteValue::operator*(const FiniteValue& o) const {
    if (q_ != o.q_) throw Error("finite values over different fields");
    FiniteValue r(q_);
    Field f = Field::prime(q_);
    auto unit_pow = [&](std::uint64_t a, long e) {
        return Scalar(f, static_cast<long>(a)).pow(e).residue();
    };
    // degree 1 x degree 0: the GW action on F_q^x goes through the rank
    r.add_unit(unit_pow(unit_, o.gw_.rank));
    r.add_unit(unit_pow(o.unit_, gw_.rank));
    r.add_gw(gw_ * o.gw_);
    // degree 1 x degree -m lands in degree 1 - m as (<a> - 1) times the lift
    auto unit_times_witt = [&](std::uint64_t a, int d, const WittClass& w) {
        GWClass g = GWClass{0, is_square_residue(a, q_)} * w.lift();
        if (d == -1) r.add_gw(g);
        else r.add_witt(d + 1, WittClass::of(q_, g));
    };
    for (const auto& [d, w] : o.witt_) {
        if (unit_ != 1) unit_times_witt(unit_, d, w);
        r.add_witt(d, WittClass::of(q_, gw_) * w);
    }
    for (const auto& [d, w] : witt_) {
        if (o.unit_ != 1) unit_times_witt(o.unit_, d, w);
        r.add_witt(d, WittClass::of(q_, o.gw_) * w);
        for (const auto& [e, v] : o.witt_) r.add_witt(d + e, w * v);
    }
    return r;
}

std::string FiniteValue::to_string() const {
    std::ostringstream os;
    os << "deg1: " << unit_ << "; deg0: (rank " << gw_.rank << ", disc "
       << (gw_.disc_square ? "square" : "nonsquare") << ")";
    for (const auto& [d, w] : witt_)
        os << "; deg" << d << ": W(rank " << w.lift().rank << ", disc "
           << (w.lift().disc_square ? "square" : "nonsquare") << ")";
    return os.str();
}

namespace {

FiniteValue evaluate(const MWElement& x, const Field& target) {
    std::uint64_t q = target.characteristic();
    FiniteValue v(q);
    for (const auto& [m, c] : x.terms()) {
        if (m.symbols.size() >= 2) continue;
        if (m.symbols.empty()) {
            if (m.eta == 0) v.add_gw(GWClass{1, true}.times(c));
            else v.add_witt(-m.eta, WittClass::of(q, GWClass{1, true}.times(c)));
            continue;
        }
        const Scalar& s = m.symbols[0];
        Scalar a = s.field().is_finite() ? s : Scalar(target, s.rational());
        if (m.eta == 0) {
            v.add_unit(a.pow(c).residue());
            continue;
        }
        GWClass g = GWClass{0, a.square_class().square}.times(c);
        if (m.eta == 1) v.add_gw(g);
        else v.add_witt(1 - m.eta, WittClass::of(q, g));
    }
    return v;
}

} // namespace

FiniteValue eval_finite_field(const MWElement& x) {
    if (!x.field().is_finite()) throw Error("finite-field evaluation needs a prime base field");
    return evaluate(x, x.field());
}

FiniteValue eval_mod_prime(const MWElement& x, std::uint64_t p) {
    if (!x.field().is_rational()) throw Error("reduction mod p needs a rational element");
    return evaluate(x, Field::prime(p));
}

Scalar canonical_nonsquare(const Field& f) {
    if (!f.is_finite()) throw Error("canonical nonsquare needs a finite field");
    std::uint64_t q = f.characteristic();
    if (!minus_one_is_square(q)) return -Scalar::one(f);
    for (std::uint64_t a = 2; a < q; ++a)
        if (!is_square_residue(a, q)) return Scalar(f, static_cast<long>(a));
    throw Error("no nonsquare found");
}

MWElement canonical_element(const Field& f, const FiniteValue& v) {
    MWElement r(f);
    if (v.unit() != 1) r += MWElement::symbol(Scalar(f, static_cast<long>(v.unit())));
    Scalar n = canonical_nonsquare(f);
    r += MWElement::integer(f, v.gw().rank);
    if (!v.gw().disc_square) r += MWElement::monomial(f, 1, Monomial{1, {n}});
    bool cyclic = !minus_one_is_square(v.q());
    for (const auto& [d, w] : v.witt_components()) {
        int m = -d;
        const GWClass& g = w.lift();
        if (cyclic) {
            long k = g.rank == 1 ? (g.disc_square ? 1 : 3) : 2;
            r += MWElement::monomial(f, k, Monomial{m, {}});
        } else {
            if (g.rank == 1) r += MWElement::monomial(f, 1, Monomial{m, {}});
            if (!g.disc_square) r += MWElement::monomial(f, 1, Monomial{m + 1, {n}});
        }
    }
    return r;
}

MWElement reduce_finite(const MWElement& x) { return canonical_element(x.field(), eval_finite_field(x)); }

std::string to_string(ZeroTest z) {
    switch (z) {
    case ZeroTest::Zero: return "zero";
    case ZeroTest::NonZero: return "nonzero";
    case ZeroTest::Unknown: return "unknown";
    }
    return "unknown";
}

ZeroTest is_zero(const MWElement& x) {
    MWElement n = mw_normalize(x);
    if (n.empty()) return ZeroTest::Zero;
    if (n.field().is_finite()) return eval_finite_field(n).is_zero() ? ZeroTest::Zero : ZeroTest::NonZero;
    static const std::uint64_t primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67};
    int good = 0;
    for (auto p : primes) {
        bool ok = true;
        for (const auto& [m, c] : n.terms())
            for (const auto& s : m.symbols) {
                const auto& q = s.rational();
                if (mpz_divisible_ui_p(q.get_num().get_mpz_t(), p) ||
                    mpz_divisible_ui_p(q.get_den().get_mpz_t(), p))
                    ok = false;
            }
        if (!ok) continue;
        if (!eval_mod_prime(n, p).is_zero()) return ZeroTest::NonZero;
        if (++good >= 6) break;
    }
    return ZeroTest::Unknown;
}

} // namespace hypermw
