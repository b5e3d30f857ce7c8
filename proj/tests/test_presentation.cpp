#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "hypermw/expression.hpp"
#include "hypermw/finite_mw.hpp"
#include "hypermw/os_model.hpp"
#include "hypermw/presentation.hpp"
#include "oracles.hpp"

using namespace hypermw;
using fixture::make;

namespace {

const Field Q = Field::rationals();
const Field F7 = Field::prime(7);

Unit random_unit(std::mt19937_64& rng, const Arrangement& a) {
    const Field& f = a.field();
    long lambda = f.is_finite() ? 1 + static_cast<long>(rng() % (f.characteristic() - 1)) : (rng() % 2 ? 1 : -1);
    Unit u{Scalar(f, lambda), {}};
    for (std::size_t i = 0; i < a.size(); ++i) {
        long e = static_cast<long>(rng() % 5) - 2;
        if (e != 0) u.exponents[static_cast<int>(i)] = e;
    }
    return u;
}

PresElement random_element(std::mt19937_64& rng, const Arrangement& a) {
    const Field& f = a.field();
    PresElement x(f);
    for (int t = 0, n = 1 + static_cast<int>(rng() % 2); t < n; ++t) {
        Word w;
        for (int k = 0, len = static_cast<int>(rng() % 3); k < len; ++k) w.push_back(random_unit(rng, a));
        MWElement c = MWElement::integer(f, static_cast<long>(rng() % 5) - 2);
        if (rng() % 2) c += MWElement::eta(f);
        if (rng() % 3 == 0) c += MWElement::symbol(Scalar(f, 1 + static_cast<long>(rng() % (f.characteristic() - 1))));
        x += PresElement::word(w, c);
    }
    return x;
}

void expect_zero(const NormalForm& nf, const Arrangement& a, const std::string& what) {
    ZeroTest z = nf_zero_test(nf);
    if (a.field().is_finite()) CHECK_MESSAGE(z == ZeroTest::Zero, what << " -> " << format_nf(nf, a));
    else CHECK_MESSAGE(z != ZeroTest::NonZero, what << " -> " << format_nf(nf, a));
}

std::vector<NamedArrangement> small_corpus() {
    std::vector<NamedArrangement> out;
    for (auto& n : fixture::corpus(30)) {
        if (n.arrangement.size() <= 5) out.push_back(n);
    }
    return out;
}

} // namespace

TEST_CASE("twist multiplies odd-degree parts by eps") {
    MWElement s = MWElement::symbol(Scalar(Q, 2));
    CHECK(twist(s, 1) == MWElement::epsilon(Q) * s);
    CHECK(twist(s, 2) == s);
    CHECK(twist(MWElement::eta(Q), 1) == MWElement::epsilon(Q) * MWElement::eta(Q));
    CHECK(twist(MWElement::integer(Q, 3), 1) == MWElement::integer(Q, 3));
}

TEST_CASE("normal form examples") {
    auto b2 = make(Q, 2, {{0, 1, 0}, {0, 0, 1}});
    Presentation p(b2);
    CHECK(format_nf(p.normal_form(parse_element("(2)", b2)), b2) == "[2]");
    CHECK(format_nf(p.normal_form(parse_element("(x1)(x1)", b2)), b2) == "[-1]·(x1)");
    CHECK(format_nf(p.normal_form(parse_element("(x1)(x2)", b2)), b2) == "(x1)(x2)");
    PresElement x = parse_element("(x1) + eta*(x2)", b2);
    CHECK(p.multiply(PresElement::coefficient(MWElement::one(Q)), x) == p.normal_form(x));
    CHECK(format_nf(p.multiply(parse_element("(x1)", b2), parse_element("(x1)", b2)), b2) == "[-1]·(x1)");
    CHECK_THROWS_AS(p.normal_form(PresElement::generator(Unit::hyperplane(Q, 3))), Error);
}

TEST_CASE("pencil normal form agrees with the exterior model") {
    auto pencil = make(Q, 2, {{0, 1, 0}, {0, 0, 1}, {0, 1, 1}});
    Presentation p(pencil);
    PresElement x = parse_element("(x2)(x1 + x2)", pencil);
    NormalForm nf = p.normal_form(x);
    auto nbc = pencil.nbc_sets();
    for (const auto& [s, c] : nf) CHECK(std::find(nbc.begin(), nbc.end(), s) != nbc.end());
    MWElement eps = MWElement::epsilon(Q);
    NormalForm want{{{2}, MWElement::symbol(Scalar(Q, -1))}, {{0, 1}, eps}, {{0, 2}, -eps}};
    CHECK(nf == want);
    OSModel m(pencil);
    CHECK(m.collapse_nf(nf) == m.nf_mod_L(ExtElement::monomial({1, 2})));
}

TEST_CASE("R polynomials") {
    auto pencil = make(Q, 2, {{0, 1, 0}, {0, 0, 1}, {0, 1, 1}});
    Presentation p(pencil);
    Unit x1 = Unit::hyperplane(Q, 0), x2 = Unit::hyperplane(Q, 1);
    Unit mx3 = fixture::unit(Q, -1, {{2, 1}});
    PresElement r = r_polynomial(pencil, {x1, x2, mx3});
    for (const auto& [w, c] : r.terms()) {
        CHECK(w.size() <= 2);
        CHECK(c.degrees() == std::vector<int>{2 - static_cast<int>(w.size())});
    }
    CHECK(nf_zero_test(p.normal_form(r)) == ZeroTest::Zero);
    CHECK_THROWS_AS(r_polynomial(pencil, {x1, x2}), Error);

    std::mt19937_64 rng(8);
    for (Field f : {Q, F7, Field::prime(5)}) {
        auto b3 = fixture::make(f, 3, {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
        Presentation pb(b3);
        for (int k = 0; k < 50; ++k) {
            Unit u = random_unit(rng, b3);
            Unit minus_u = unit_mul(Unit::constant(-Scalar::one(f)), u);
            expect_zero(pb.normal_form(r_polynomial(b3, {u, minus_u})), b3, "R(f, -f)");
        }
    }
    for (std::uint64_t q : {5, 7, 11}) {
        Field f = Field::prime(q);
        auto empty = make(f, 1, {});
        Presentation pe(empty);
        for (int k = 0; k < 50; ++k) {
            std::size_t t = 1 + rng() % 3;
            std::vector<Unit> us;
            Scalar sum = Scalar::zero(f);
            for (std::size_t i = 0; i < t; ++i) {
                Scalar c(f, 1 + static_cast<long>(rng() % (q - 1)));
                us.push_back(Unit::constant(c));
                sum += c;
            }
            if (sum.is_zero()) continue;
            us.push_back(Unit::constant(-sum));
            CHECK(nf_zero_test(pe.normal_form(r_polynomial(empty, us))) == ZeroTest::Zero);
        }
    }
}

TEST_CASE("R with a trailing -1 reduces to the plain product") {
    // The literal R formula gives R(f_1, ..., f_t, -1) = (f_1)...(f_t); the
    // eps-twisted form of this identity does not hold.
    Unit x1 = Unit::hyperplane(Q, 0), x2 = Unit::hyperplane(Q, 1);
    CHECK(r_minus_one_plain_identity(Q, {x1}));
    CHECK(r_minus_one_plain_identity(Q, {x1, x2}));
    CHECK_FALSE(r_minus_one_identity(Q, {x1}));
    CHECK_FALSE(r_minus_one_identity(Q, {x1, x2}));
    std::mt19937_64 rng(4);
    auto b4 = make(F7, 4, {{0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}});
    for (int k = 0; k < 100; ++k) {
        std::vector<Unit> us;
        for (std::size_t i = 0, t = 1 + rng() % 4; i < t; ++i) us.push_back(random_unit(rng, b4));
        CHECK(r_minus_one_plain_identity(F7, us));
    }
}

TEST_CASE("R changes only through shorter words when one unit is pulled out") {
    auto b4 = make(F7, 4, {{0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}});
    for (std::size_t t = 1; t <= 3; ++t) {
        std::vector<Unit> f;
        for (std::size_t j = 0; j <= t; ++j) f.push_back(Unit::hyperplane(F7, static_cast<int>(j)));
        for (std::size_t i = 0; i <= t; ++i) {
            std::vector<Unit> rest = f;
            rest.erase(rest.begin() + static_cast<long>(i));
            PresElement d = r_polynomial_formal(F7, f) -
                            MWElement::epsilon_power(F7, static_cast<long>(i)) *
                                (PresElement::generator(f[i]) * r_polynomial_formal(F7, rest));
            for (const auto& [s, c] : free_reduce(d)) {
                CHECK(s.size() < t + 1);
                CHECK(std::find(s.begin(), s.end(), static_cast<int>(i)) == s.end());
            }
        }
    }
}

TEST_CASE("relation generators") {
    auto b2 = make(Q, 2, {{0, 1, 0}, {0, 0, 1}});
    auto count = [](const std::vector<RelationInstance>& v, RelationFamily fam) {
        return std::count_if(v.begin(), v.end(), [&](const RelationInstance& r) { return r.family == fam; });
    };
    CHECK(count(j_prime_generators(b2), RelationFamily::RPoly) == 0);
    auto pencil = make(Q, 2, {{0, 1, 0}, {0, 0, 1}, {0, 1, 1}});
    CHECK(count(j_prime_generators(pencil), RelationFamily::RPoly) == 1);
    auto tri = make(Q, 2, {{0, 1, 0}, {0, 0, 1}, {-1, 1, 1}});
    auto rp = j_prime_generators(tri);
    CHECK(count(rp, RelationFamily::RPoly) == 1);
    for (const auto& r : rp)
        if (r.family == RelationFamily::RPoly) CHECK(r.units.size() == 4);
    for (const auto& r : j_generators(tri))
        if (r.family == RelationFamily::Steinberg) CHECK(r.units.size() == 3);
}

TEST_CASE("normal form annihilates the relations under both engines") {
    for (const auto& [name, a] : small_corpus()) {
        Presentation rp(a, EngineVariant::RPoly), sp(a, EngineVariant::Steinberg);
        for (const auto& g : j_generators(a)) {
            expect_zero(rp.normal_form(g.element), a, name + " " + to_string(g.family));
            expect_zero(sp.normal_form(g.element), a, name + " " + to_string(g.family));
        }
        for (const auto& g : j_prime_generators(a)) {
            expect_zero(rp.normal_form(g.element), a, name + " " + to_string(g.family));
            expect_zero(sp.normal_form(g.element), a, name + " " + to_string(g.family));
        }
    }
}

TEST_CASE("random logarithm and square instances vanish") {
    std::mt19937_64 rng(31);
    for (const auto& [name, a] : small_corpus()) {
        if (!a.field().is_finite() || a.size() == 0) continue;
        Presentation p(a);
        for (int k = 0; k < 10; ++k) {
            Unit f = random_unit(rng, a), g = random_unit(rng, a);
            PresElement log = PresElement::generator(unit_mul(f, g)) - PresElement::generator(f) -
                              PresElement::generator(g) -
                              MWElement::eta(a.field()) * (PresElement::generator(f) * PresElement::generator(g));
            expect_zero(p.normal_form(log), a, name + " logarithm");
            PresElement sq = PresElement::generator(f) * PresElement::generator(f) -
                             MWElement::symbol(-Scalar::one(a.field())) * PresElement::generator(f);
            expect_zero(p.normal_form(sq), a, name + " square");
            PresElement anti = PresElement::generator(f) * PresElement::generator(g) -
                               MWElement::epsilon(a.field()) * (PresElement::generator(g) * PresElement::generator(f));
            expect_zero(p.normal_form(anti), a, name + " anticommutativity");
            Unit mf = unit_mul(Unit::constant(-Scalar::one(a.field())), f);
            expect_zero(p.normal_form(PresElement::generator(mf) * PresElement::generator(f)), a, name + " (-f)(f)");
        }
    }
}

TEST_CASE("circuit rules have unit leading coefficients and rewrite downwards") {
    auto below = [](const IndexSet& x, const IndexSet& y) {
        return x.size() < y.size() || (x.size() == y.size() && x < y);
    };
    for (const auto& [name, a] : small_corpus()) {
        for (EngineVariant v : {EngineVariant::RPoly, EngineVariant::Steinberg}) {
            Presentation p(a, v);
            for (const auto& r : p.rules()) {
                CHECK_MESSAGE(is_zero(r.leading * r.leading - MWElement::one(a.field())) != ZeroTest::NonZero, name);
                for (const auto& [s, c] : r.replacement)
                    CHECK_MESSAGE(below(s, r.target), name);
            }
        }
    }
}

TEST_CASE("basis and ranks") {
    auto b2 = make(Q, 2, {{0, 1, 0}, {0, 0, 1}});
    CHECK(basis(b2) == std::vector<IndexSet>{{}, {0}, {1}, {0, 1}});
    CHECK(rank(b2) == std::vector<long>{1, 2, 1});
    auto pencil = make(Q, 2, {{0, 1, 0}, {0, 0, 1}, {0, 1, 1}});
    CHECK(basis(pencil).size() == 6);
    CHECK(rank(pencil) == std::vector<long>{1, 3, 2});
    CHECK(basis(make(Q, 2, {})) == std::vector<IndexSet>{{}});
}

TEST_CASE("ranks split along the last hyperplane and match the Poincare polynomial") {
    for (const auto& [name, a] : fixture::corpus(50)) {
        auto r = oracle::trimmed(rank(a));
        CHECK_MESSAGE(r == oracle::whitney_poincare(a), name);
        CHECK_MESSAGE(basis(a) == a.nbc_sets(), name);
        if (a.size() == 0) continue;
        int y = static_cast<int>(a.size()) - 1;
        auto rd = rank(a.deletion(y)), rr = rank(a.restriction(y).restricted);
        std::vector<long> sum(std::max(rd.size(), rr.size() + 1), 0);
        for (std::size_t k = 0; k < rd.size(); ++k) sum[k] += rd[k];
        for (std::size_t k = 0; k < rr.size(); ++k) sum[k + 1] += rr[k];
        CHECK_MESSAGE(r == oracle::trimmed(sum), name);
    }
}

TEST_CASE("restriction boundary") {
    auto b2 = make(Q, 2, {{0, 1, 0}, {0, 0, 1}});
    Presentation p(b2);
    Arrangement r = b2.restriction(1).restricted;
    PresElement b = restriction_boundary(p, parse_element("(x1)(x2)", b2));
    CHECK(format_nf(Presentation(r).normal_form(b), r) == "(x1)");
    CHECK(format_nf(Presentation(r).normal_form(restriction_boundary(p, parse_element("(x2)", b2))), r) == "1");
    CHECK(restriction_boundary(p, parse_element("(x1)", b2)).empty());

    for (const auto& [name, a] : small_corpus()) {
        if (a.size() == 0) continue;
        int y = static_cast<int>(a.size()) - 1;
        Restriction res = a.restriction(y);
        Presentation pa(a), pr(res.restricted);
        for (const auto& s : basis(a.deletion(y))) {
            Word w;
            for (int i : s) w.push_back(Unit::hyperplane(a.field(), i));
            expect_zero(pr.normal_form(restriction_boundary(pa, PresElement::word(w, MWElement::one(a.field())))),
                        res.restricted, name + " deletion word");
        }
        for (const auto& t : basis(res.restricted)) {
            Word w;
            for (int j : t) w.push_back(res.lift(j));
            w.push_back(Unit::hyperplane(a.field(), y));
            NormalForm got = pr.normal_form(restriction_boundary(pa, PresElement::word(w, MWElement::one(a.field()))));
            expect_zero(nf_sub(got, {{t, MWElement::one(a.field())}}, a.field()), res.restricted, name + " lifted word");
        }
    }
}

TEST_CASE("ring axioms over GF(7)") {
    std::mt19937_64 rng(99);
    std::vector<Arrangement> arrs{
        make(F7, 2, {{0, 1, 0}, {0, 0, 1}, {0, 1, 1}}),
        make(F7, 2, {{0, 1, 0}, {0, 0, 1}, {-1, 1, 1}}),
        make(F7, 2, {{0, 1, 0}, {0, 0, 1}, {0, 1, 1}, {-1, 1, 0}}),
        make(F7, 3, {{0, 1, -1, 0}, {0, 1, 0, -1}, {0, 0, 1, -1}, {0, 1, 0, 0}}),
    };
    for (int k = 0; k < 100; ++k) {
        const Arrangement& a = arrs[static_cast<std::size_t>(k) % arrs.size()];
        Presentation p(a);
        PresElement x = random_element(rng, a), y = random_element(rng, a), z = random_element(rng, a);
        NormalForm left = p.multiply(nf_to_element(p.multiply(x, y), F7), z);
        NormalForm right = p.multiply(x, nf_to_element(p.multiply(y, z), F7));
        CHECK(nf_zero_test(nf_sub(left, right, F7)) == ZeroTest::Zero);
        NormalForm nx = p.normal_form(x);
        CHECK(p.normal_form(nf_to_element(nx, F7)) == nx);
        Unit f = random_unit(rng, a), g = random_unit(rng, a);
        NormalForm fg = p.normal_form(PresElement::generator(f) * PresElement::generator(g));
        NormalForm gf = p.normal_form(MWElement::epsilon(F7) * (PresElement::generator(g) * PresElement::generator(f)));
        CHECK(nf_zero_test(nf_sub(fg, gf, F7)) == ZeroTest::Zero);
    }
}
