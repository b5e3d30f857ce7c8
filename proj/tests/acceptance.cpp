// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "hypermw/expression.hpp"
#include "hypermw/finite_mw.hpp"
#include "hypermw/os_model.hpp"
#include "hypermw/presentation.hpp"
#include "hypermw/verify.hpp"
#include "oracles.hpp"

using namespace hypermw;

namespace {

struct Tally {
    long checks = 0;
    long failures = 0;
    long inconclusive = 0;
    std::vector<std::string> notes;
    std::string first_failure;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (ok) return;
        if (failures++ == 0) first_failure = what;
    }
    /// Finite fields must certify Zero; over Q an Unknown is counted but not failed.
    void expect_zero(ZeroTest z, bool finite, const std::string& what) {
        if (!finite && z == ZeroTest::Unknown) {
            ++checks;
            ++inconclusive;
            return;
        }
        expect(z == ZeroTest::Zero, what + " (" + to_string(z) + ")");
    }
};

std::vector<Field> fields() {
    return {Field::prime(3), Field::prime(5), Field::prime(7), Field::prime(11), Field::rationals()};
}

/// The named corpus over every field plus 50 seeded cases.
std::vector<NamedArrangement> full_corpus() { return fixture::corpus(50); }

Scalar draw_scalar(std::mt19937_64& rng, const Field& f) {
    while (true) {
        Scalar s = f.is_finite() ? Scalar(f, static_cast<long>(rng() % f.characteristic()))
                                 : Scalar(f, mpq_class(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 6)));
        if (!s.is_zero()) return s;
    }
}

Unit draw_unit(std::mt19937_64& rng, const Arrangement& a, long spread = 2) {
    const Field& f = a.field();
    long lambda = f.is_finite() ? 1 + static_cast<long>(rng() % (f.characteristic() - 1)) : (rng() % 2 ? 1 : -1);
    Unit u{Scalar(f, lambda), {}};
    for (std::size_t i = 0; i < a.size(); ++i) {
        long e = static_cast<long>(rng() % static_cast<std::uint64_t>(2 * spread + 1)) - spread;
        if (e != 0) u.exponents[static_cast<int>(i)] = e;
    }
    return u;
}

PresElement draw_element(std::mt19937_64& rng, const Arrangement& a) {
    const Field& f = a.field();
    PresElement x(f);
    for (int t = 0, n = 1 + static_cast<int>(rng() % 2); t < n; ++t) {
        Word w;
        for (int k = 0, len = static_cast<int>(rng() % 3); k < len; ++k) w.push_back(draw_unit(rng, a));
        MWElement c = MWElement::integer(f, static_cast<long>(rng() % 5) - 2);
        if (rng() % 2) c += MWElement::eta(f);
        if (rng() % 3 == 0) c += MWElement::symbol(draw_scalar(rng, f));
        x += PresElement::word(w, c);
    }
    return x;
}

void record_case(Tally& t, const std::string& suite, const NamedArrangement& n, std::uint64_t seed) {
    CaseOutcome o = check_case(suite, n.arrangement, seed);
    t.inconclusive += o.inconclusive;
    t.expect(o.ok(), o.ok() ? "" : n.name + ": " + o.failures.front().what + " " + o.failures.front().expression);
}

Tally mw_relations() {
    Tally t;
    std::mt19937_64 rng(2024);
    for (const Field& f : fields()) {
        MWElement eta = MWElement::eta(f), minus_one = MWElement::symbol(-Scalar::one(f));
        for (int k = 0; k < 200; ++k) {
            Scalar a = draw_scalar(rng, f), b = draw_scalar(rng, f);
            std::string at = " at a=" + a.to_string() + " b=" + b.to_string() + " over " + f.to_string();
            if (!a.is_one()) {
                MWElement r1 = MWElement::symbol(a) * MWElement::symbol(Scalar::one(f) - a);
                t.expect(r1.empty(), "[a][1-a]" + at);
                if (f.is_finite()) t.expect(eval_finite_field(r1).is_zero(), "[a][1-a] evaluated" + at);
            }
            MWElement rhs = MWElement::symbol(a) + MWElement::symbol(b) + eta * MWElement::symbol(a) * MWElement::symbol(b);
            t.expect((MWElement::log_expansion(a, b) - rhs).empty(), "[ab] expansion" + at);
            t.expect_zero(is_zero(MWElement::symbol(a * b) - rhs), f.is_finite(), "[ab]" + at);
            if (f.is_finite())
                t.expect(eval_finite_field(MWElement::symbol(a * b)) == eval_finite_field(rhs), "[ab] evaluated" + at);
            MWElement r3 = eta * MWElement::symbol(a) - MWElement::symbol(a) * eta;
            t.expect(r3.empty(), "eta[a]" + at);
            MWElement r4 = eta * (MWElement::integer(f, 2) + eta * minus_one);
            t.expect(r4.empty(), "eta(2 + eta[-1])" + at);
            t.expect((r4 * MWElement::symbol(a)).empty(), "eta(2 + eta[-1])[a]" + at);
            if (f.is_finite()) {
                t.expect(eval_finite_field(r3).is_zero(), "eta[a] evaluated" + at);
                t.expect(eval_finite_field(r4 * MWElement::symbol(a)).is_zero(), "eta(2 + eta[-1])[a] evaluated" + at);
            }
        }
        MWElement eps = MWElement::epsilon(f);
        t.expect(eps * eps == MWElement::one(f), "eps^2 over " + f.to_string());
        t.expect((eps * minus_one - minus_one).empty(), "eps[-1] over " + f.to_string());
        if (f.is_finite()) {
            t.expect((eval_finite_field(eps * eps) == eval_finite_field(MWElement::one(f))), "eps^2 evaluated");
            t.expect(eval_finite_field(eps * minus_one) == eval_finite_field(minus_one), "eps[-1] evaluated");
        }
    }
    return t;
}

Tally rank_triple() {
    Tally t;
    std::uint64_t seed = 1;
    for (const auto& n : full_corpus()) {
        record_case(t, "rank-triple", n, seed++);
        auto r = oracle::trimmed(rank(n.arrangement));
        t.expect(r == oracle::trimmed(n.arrangement.poincare_polynomial()), n.name + ": ranks vs Poincare");
        t.expect(r == oracle::whitney_poincare(n.arrangement), n.name + ": ranks vs subset-sum oracle");
    }
    return t;
}

Tally short_exact() {
    Tally t;
    std::uint64_t seed = 1;
    for (const auto& n : full_corpus()) {
        const Arrangement& a = n.arrangement;
        record_case(t, "short-exact", n, seed++);
        for (std::size_t y = 0; y < a.size(); ++y) {
            auto rd = rank(a.deletion(static_cast<int>(y))), rr = rank(a.restriction(static_cast<int>(y)).restricted);
            std::vector<long> sum(std::max(rd.size(), rr.size() + 1), 0);
            for (std::size_t k = 0; k < rd.size(); ++k) sum[k] += rd[k];
            for (std::size_t k = 0; k < rr.size(); ++k) sum[k + 1] += rr[k];
            t.expect(oracle::trimmed(rank(a)) == oracle::trimmed(sum), n.name + ": additivity at " + std::to_string(y + 1));
        }
    }
    return t;
}

Tally ideal_soundness(std::string& r_minus_one_detail) {
    Tally t;
    std::uint64_t seed = 1;
    for (const auto& n : full_corpus()) {
        const Arrangement& a = n.arrangement;
        bool finite = a.field().is_finite();
        Presentation rp(a, EngineVariant::RPoly), sp(a, EngineVariant::Steinberg);
        std::vector<RelationInstance> all = j_generators(a);
        for (auto& g : j_prime_generators(a)) all.push_back(g);
        for (const auto& g : all) {
            std::string what = n.name + ": " + to_string(g.family) + " " + format_element(g.element, a);
            t.expect_zero(nf_zero_test(rp.normal_form(g.element)), finite, what);
            t.expect_zero(nf_zero_test(sp.normal_form(g.element)), finite, what + " (Steinberg engine)");
        }
        for (const auto& c : a.circuits()) {
            t.expect_zero(nf_zero_test(rp.normal_form(circuit_r_polynomial(a, c))), finite, n.name + ": circuit RPoly");
            t.expect_zero(nf_zero_test(sp.normal_form(circuit_r_polynomial(a, c))), finite,
                          n.name + ": circuit RPoly (Steinberg engine)");
        }
        record_case(t, "equiv", n, seed++);
    }

    std::mt19937_64 rng(4);
    long held = 0, plain_held = 0;
    for (const Field& f : fields()) {
        auto b4 = fixture::make(f, 4, {{0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}});
        for (int k = 0; k < 20; ++k) {
            std::vector<Unit> us;
            for (std::size_t i = 0, n = 1 + rng() % 4; i < n; ++i) us.push_back(draw_unit(rng, b4));
            bool ok = r_minus_one_identity(f, us);
            held += ok;
            plain_held += r_minus_one_plain_identity(f, us);
            t.expect(ok, "r_minus_one_identity over " + f.to_string() + " with t=" + std::to_string(us.size()));
        }
    }
    r_minus_one_detail = "r_minus_one_identity " + std::to_string(held) + "/100, untwisted form " +
                         std::to_string(plain_held) + "/100";
    return t;
}

Tally os_model() {
    Tally t;
    std::mt19937_64 rng(17);
    auto a = fixture::make(Field::rationals(), 3, {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 1, 1, 0}});
    for (int k = 0; k < 200; ++k) {
        Unit f = draw_unit(rng, a, 3), g = draw_unit(rng, a, 3), g2 = draw_unit(rng, a, 3);
        Unit h = unit_mul(f, unit_inverse(g)), h2 = unit_mul(f, unit_inverse(g2));
        ExtElement d1 = tilde_div_product(tilde_div(g), tilde_div(h));
        t.expect(d1 == tilde_div_product(tilde_div(g2), tilde_div(h2)), "tilde_div factorization " + format_unit(f, a));
        t.expect(d1 == tilde_div(f), "tilde_div product " + format_unit(f, a));
        t.expect(d1 == tilde_div_product(tilde_div(h), tilde_div(g)), "tilde_div order " + format_unit(f, a));
    }
    std::uint64_t seed = 1;
    for (const auto& n : full_corpus()) {
        const Arrangement& arr = n.arrangement;
        record_case(t, "psi-phi", n, seed++);
        OSModel m(arr);
        Presentation p(arr);
        for (const auto& s : arr.nbc_sets())
            t.expect(m.psi(m.phi(s)) == ExtElement::monomial(s), n.name + ": psi(phi(" + format_monomial(s) + "))");
        for (const auto& s : basis(arr)) {
            PresElement x = m.phi(s);
            t.expect(m.collapse_nf(p.normal_form(m.phi(m.psi(x)))) == m.collapse_nf(p.normal_form(x)),
                     n.name + ": phi(psi(" + format_basis_word(s, arr) + "))");
        }
        auto expect = oracle::trimmed(rank(arr));
        t.expect(oracle::trimmed(m.rank_mod_L()) == expect, n.name + ": rank mod L");
        if (arr.size() <= 5) {
            t.expect(oracle::quotient_ranks(arr, false) == expect, n.name + ": spanning-set rank over Q");
            t.expect(oracle::quotient_ranks(arr, true) == expect, n.name + ": spanning-set rank over GF(2)");
        }
    }
    return t;
}

Tally ring_sanity() {
    Tally t;
    Field f7 = Field::prime(7);
    std::mt19937_64 rng(99);
    std::vector<Arrangement> arrs{
        fixture::make(f7, 2, {{0, 1, 0}, {0, 0, 1}, {0, 1, 1}}),
        fixture::make(f7, 2, {{0, 1, 0}, {0, 0, 1}, {-1, 1, 1}}),
        fixture::make(f7, 2, {{0, 1, 0}, {0, 0, 1}, {0, 1, 1}, {-1, 1, 0}}),
        fixture::make(f7, 3, {{0, 1, -1, 0}, {0, 1, 0, -1}, {0, 0, 1, -1}, {0, 1, 0, 0}}),
    };
    for (int k = 0; k < 100; ++k) {
        const Arrangement& a = arrs[static_cast<std::size_t>(k) % arrs.size()];
        Presentation p(a);
        PresElement x = draw_element(rng, a), y = draw_element(rng, a), z = draw_element(rng, a);
        NormalForm left = p.multiply(nf_to_element(p.multiply(x, y), f7), z);
        NormalForm right = p.multiply(x, nf_to_element(p.multiply(y, z), f7));
        t.expect(nf_zero_test(nf_sub(left, right, f7)) == ZeroTest::Zero, "associativity " + format_element(x, a));
        NormalForm nx = p.normal_form(x);
        t.expect(p.normal_form(nf_to_element(nx, f7)) == nx, "idempotence " + format_element(x, a));
        Unit f = draw_unit(rng, a), g = draw_unit(rng, a);
        NormalForm fg = p.normal_form(PresElement::generator(f) * PresElement::generator(g));
        NormalForm gf = p.normal_form(MWElement::epsilon(f7) * (PresElement::generator(g) * PresElement::generator(f)));
        t.expect(nf_zero_test(nf_sub(fg, gf, f7)) == ZeroTest::Zero, "eps-commutativity " + format_unit(f, a));
    }
    for (const auto& n : full_corpus()) {
        Presentation p(n.arrangement);
        for (int k = 0; k < 5; ++k) {
            if (n.arrangement.size() == 0) break;
            NormalForm nx = p.normal_form(draw_element(rng, n.arrangement));
            t.expect(p.normal_form(nf_to_element(nx, n.arrangement.field())) == nx, n.name + ": idempotence");
        }
    }
    return t;
}

GWClass gw_of(std::uint64_t q, const std::vector<std::uint64_t>& diag) {
    GWClass g;
    for (auto a : diag) g = g + eval_finite_field(MWElement::bracket_form(Scalar(Field::prime(q), static_cast<long>(a)))).gw();
    return g;
}

Tally backend(std::string& detail) {
    Tally t;
    std::ostringstream out;
    for (std::uint64_t q : {3, 5, 7, 11, 13}) {
        // Every diagonal form of rank <= 3, and rank 4 forms up to reordering.
        std::vector<std::vector<std::uint64_t>> forms;
        std::function<void(std::vector<std::uint64_t>&, std::size_t)> grow = [&](std::vector<std::uint64_t>& d, std::size_t n) {
            if (d.size() == n) {
                forms.push_back(d);
                return;
            }
            for (std::uint64_t a = d.empty() ? 1 : d.back(); a < q; ++a) {
                d.push_back(a);
                grow(d, n);
                d.pop_back();
            }
        };
        for (std::size_t n = 1; n <= 4; ++n) {
            std::vector<std::uint64_t> d;
            grow(d, n);
        }
        std::map<std::vector<std::uint64_t>, GWClass> by_counts;
        std::set<std::pair<long, bool>> gw_classes;
        for (const auto& d : forms) {
            auto counts = oracle::value_counts(q, d);
            counts.push_back(d.size());
            GWClass g = gw_of(q, d);
            gw_classes.insert({g.rank, g.disc_square});
            auto [it, fresh] = by_counts.emplace(counts, g);
            t.expect(fresh || it->second == g, "GW(F_" + std::to_string(q) + ") isometric forms split");
            t.expect(WittClass::of(q, g).is_zero() == oracle::hyperbolic(q, d), "W(F_" + std::to_string(q) + ") hyperbolicity");
        }
        t.expect(by_counts.size() == gw_classes.size(), "GW(F_" + std::to_string(q) + ") distinct forms merged");

        // Witt classes against the oracle's equivalence x ~ y iff x + (-y) is hyperbolic.
        std::vector<std::vector<std::uint64_t>> reps;
        for (const auto& d : forms)
            if (d.size() <= 2) reps.push_back(d);
        for (const auto& x : reps)
            for (const auto& y : reps) {
                std::vector<std::uint64_t> s = x;
                for (auto b : y) s.push_back(q - b);
                bool oracle_same = oracle::hyperbolic(q, s);
                t.expect((WittClass::of(q, gw_of(q, x)) == WittClass::of(q, gw_of(q, y))) == oracle_same,
                         "W(F_" + std::to_string(q) + ") classes");
            }

        std::vector<WittClass> group{WittClass::of(q, GWClass{})};
        for (const auto& d : reps) {
            WittClass w = WittClass::of(q, gw_of(q, d));
            if (std::find(group.begin(), group.end(), w) == group.end()) group.push_back(w);
        }
        int max_order = 0;
        for (const auto& w : group) max_order = std::max(max_order, w.order());
        if (q == 3) {
            t.expect(group.size() == 4 && max_order == 4, "W(F_3) cyclic of order 4");
            out << "W(F_3): order " << group.size() << ", exponent " << max_order;
        }
        if (q == 5) {
            t.expect(group.size() == 4 && max_order == 2, "W(F_5) Klein four");
            out << "; W(F_5): order " << group.size() << ", exponent " << max_order;
        }
    }
    detail = out.str();
    return t;
}

struct Criterion {
    int number;
    std::string name;
    std::function<Tally(std::string&)> run;
    double limit_seconds = 0;
};

} // namespace

int main() {
    std::vector<Criterion> criteria{
        {1, "MW relations", [](std::string&) { return mw_relations(); }, 5},
        {2, "rank triple-agreement", [](std::string&) { return rank_triple(); }, 60},
        {3, "deletion-restriction exactness", [](std::string&) { return short_exact(); }},
        {4, "ideal soundness", ideal_soundness},
        {5, "exterior model", [](std::string&) { return os_model(); }},
        {6, "ring sanity", [](std::string&) { return ring_sanity(); }},
        {7, "finite-field backend", backend},
    };
    bool all = true;
    for (const auto& c : criteria) {
        std::string extra;
        Tally t;
        bool ok = false;
        auto start = std::chrono::steady_clock::now();
        try {
            t = c.run(extra);
            ok = t.failures == 0;
        } catch (const std::exception& e) {
            t.first_failure = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream detail;
        detail << t.checks << " checks, " << t.failures << " failed";
        if (t.inconclusive) detail << ", " << t.inconclusive << " inconclusive over Q";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", secs);
        detail << ", " << buf << " s";
        if (c.limit_seconds > 0) {
            detail << " (limit " << c.limit_seconds << " s)";
            if (secs >= c.limit_seconds) ok = false;
        }
        if (!extra.empty()) detail << "; " << extra;
        if (!t.first_failure.empty()) detail << "; first failure: " << t.first_failure;
        std::cout << "criterion " << c.number << " [PRIMARY] " << c.name << ": " << (ok ? "PASS" : "FAIL") << " ("
                  << detail.str() << ")" << std::endl;
        all = all && ok;
    }
    return all ? 0 : 1;
}
