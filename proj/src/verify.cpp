#include "hypermw/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "hypermw/arrangement_io.hpp"
#include "hypermw/expression.hpp"
#include "hypermw/os_model.hpp"
#include "hypermw/presentation.hpp"

namespace hypermw {

using nlohmann::json;

namespace {

Row row_of(const Field& f, std::initializer_list<long> v) {
    Row r;
    for (long x : v) r.push_back(Scalar(f, x));
    return r;
}

std::uint64_t power_capped(std::uint64_t q, std::size_t n) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (r > (1ULL << 40)) return r;
        r *= q;
    }
    return r;
}

Scalar random_scalar(std::mt19937_64& rng, const Field& f, bool nonzero) {
    if (f.is_finite()) {
        std::uint64_t p = f.characteristic();
        std::uint64_t lo = nonzero ? 1 : 0;
        return Scalar(f, static_cast<long>(lo + rng() % (p - lo)));
    }
    while (true) {
        long v = static_cast<long>(rng() % 5) - 2;
        if (!nonzero || v != 0) return Scalar(f, v);
    }
}

// Constants over Q stay in {1, -1} so that coefficient zero tests are decidable.
Scalar random_unit_constant(std::mt19937_64& rng, const Field& f) {
    if (f.is_finite()) return random_scalar(rng, f, true);
    return Scalar(f, rng() % 2 ? 1L : -1L);
}

Unit random_unit(std::mt19937_64& rng, const Arrangement& a, long max_exp) {
    Unit u{random_unit_constant(rng, a.field()), {}};
    for (std::size_t i = 0; i < a.size(); ++i) {
        long e = static_cast<long>(rng() % static_cast<std::uint64_t>(2 * max_exp + 1)) - max_exp;
        if (e != 0) u.exponents[static_cast<int>(i)] = e;
    }
    return u;
}

PresElement word_of(const Arrangement& a, const IndexSet& s) {
    Word w;
    for (int i : s) w.push_back(Unit::hyperplane(a.field(), i));
    return PresElement::word(w, MWElement::one(a.field()));
}

std::string ranks_text(const std::vector<long>& r) {
    std::string out;
    for (std::size_t i = 0; i < r.size(); ++i) out += (i ? " " : "") + std::to_string(r[i]);
    return out;
}

std::vector<long> trimmed(std::vector<long> r) {
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

struct Checker {
    CaseOutcome out;

    void fail(std::string what, std::string expr = {}) { out.failures.push_back({std::move(what), std::move(expr)}); }

    // Records a zero test; false only for a certified nonzero result.
    void expect_zero(const NormalForm& nf, const std::string& what, const std::string& expr,
                     const Arrangement& a) {
        switch (nf_zero_test(nf)) {
        case ZeroTest::Zero:
            return;
        case ZeroTest::Unknown:
            ++out.inconclusive;
            return;
        case ZeroTest::NonZero:
            fail(what + " normalizes to " + format_nf(nf, a), expr);
        }
    }
};

void check_rank_triple(Checker& c, const Arrangement& a, std::uint64_t) {
    auto r = trimmed(rank(a));
    auto n = trimmed(degree_counts(a.nbc_sets()));
    auto p = trimmed(a.poincare_polynomial());
    if (r != n || n != p)
        c.fail("ranks disagree: recursion [" + ranks_text(r) + "], nbc [" + ranks_text(n) + "], poincare [" +
               ranks_text(p) + "]");
}

void check_short_exact(Checker& c, const Arrangement& a, std::uint64_t) {
    if (a.size() == 0) return;
    int y = static_cast<int>(a.size()) - 1;
    Arrangement del = a.deletion(y);
    Restriction res = a.restriction(y);
    auto r = rank(a), rd = rank(del), rr = rank(res.restricted);
    std::size_t n = std::max({r.size(), rd.size(), rr.size() + 1});
    r.resize(n), rd.resize(n), rr.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        long expect = rd[k] + (k ? rr[k - 1] : 0);
        if (r[k] != expect)
            c.fail("degree " + std::to_string(k) + ": rank " + std::to_string(r[k]) + " != " + std::to_string(rd[k]) +
                   " + " + std::to_string(k ? rr[k - 1] : 0));
    }

    Presentation p(a);
    Presentation pr(res.restricted);
    for (const auto& s : basis(del)) {
        PresElement x = word_of(a, s);
        PresElement b = restriction_boundary(p, x);
        c.expect_zero(pr.normal_form(b), "boundary of a deletion word", format_element(x, a), res.restricted);
    }
    for (const auto& t : basis(res.restricted)) {
        Word w;
        for (int j : t) w.push_back(res.lift(j));
        w.push_back(Unit::hyperplane(a.field(), y));
        PresElement x = PresElement::word(w, MWElement::one(a.field()));
        NormalForm got = pr.normal_form(restriction_boundary(p, x));
        NormalForm want{{t, MWElement::one(a.field())}};
        c.expect_zero(nf_sub(got, want, a.field()), "boundary minus restricted basis word", format_element(x, a),
                      res.restricted);
    }
}

void check_equiv(Checker& c, const Arrangement& a, std::uint64_t seed) {
    Presentation rp(a, EngineVariant::RPoly);
    Presentation sp(a, EngineVariant::Steinberg);
    for (const auto& g : j_generators(a))
        c.expect_zero(rp.normal_form(g.element), to_string(g.family) + " relation under the R engine",
                      format_element(g.element, a), a);
    for (const auto& g : j_prime_generators(a))
        c.expect_zero(sp.normal_form(g.element), to_string(g.family) + " relation under the Steinberg engine",
                      format_element(g.element, a), a);
    std::mt19937_64 rng(seed ^ 0x6571756976ULL);
    for (int k = 0; k < 4 && a.size() > 0; ++k) {
        Unit f = random_unit(rng, a, 1);
        Unit minus_f = unit_mul(Unit::constant(-Scalar::one(a.field())), f);
        PresElement x = PresElement::generator(minus_f) * PresElement::generator(f);
        c.expect_zero(rp.normal_form(x), "(-f)(f)", format_element(x, a), a);
    }
}

void check_tildediv(Checker& c, const Arrangement& a, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x746469765ULL);
    for (int k = 0; k < 20; ++k) {
        Unit f = random_unit(rng, a, 2);
        Unit g1 = random_unit(rng, a, 2), g2 = random_unit(rng, a, 2);
        Unit h1 = unit_mul(f, unit_inverse(g1)), h2 = unit_mul(f, unit_inverse(g2));
        ExtElement d1 = tilde_div_product(tilde_div(g1), tilde_div(h1));
        ExtElement d2 = tilde_div_product(tilde_div(g2), tilde_div(h2));
        ExtElement swapped = tilde_div_product(tilde_div(h1), tilde_div(g1));
        ExtElement direct = tilde_div(f);
        std::string expr = format_unit(f, a) + " = " + format_unit(g1, a) + " * " + format_unit(h1, a) + " = " +
                           format_unit(g2, a) + " * " + format_unit(h2, a);
        if (!(d1 == d2) || !(d1 == direct))
            c.fail("twisted divisor depends on the factorization: " + d1.to_string() + " vs " + d2.to_string() +
                       " vs " + direct.to_string(),
                   expr);
        if (!(d1 == swapped)) c.fail("twisted divisor depends on factor order", expr);
    }
}

void check_psi_phi(Checker& c, const Arrangement& a, std::uint64_t) {
    OSModel m(a);
    Presentation p(a);
    for (const auto& s : a.nbc_sets()) {
        ExtElement back = m.psi(m.phi(s));
        if (!(back == ExtElement::monomial(s)))
            c.fail("psi(phi(m)) = " + back.to_string(), format_monomial(s));
    }
    for (const auto& s : basis(a)) {
        PresElement x = word_of(a, s);
        ExtElement want = m.collapse_nf(p.normal_form(x));
        ExtElement got = m.collapse_nf(p.normal_form(m.phi(m.psi(x))));
        if (!(got == want))
            c.fail("phi(psi(b)) = " + got.to_string() + " but b reduces to " + want.to_string(),
                   format_element(x, a));
    }
    for (const auto& circuit : a.circuits()) {
        PresElement r = circuit_r_polynomial(a, circuit);
        ExtElement img = m.psi(r);
        if (!img.empty()) c.fail("psi of a circuit relation is " + img.to_string(), format_element(r, a));
    }
    auto lr = trimmed(m.rank_mod_L()), zr = trimmed(a.poincare_polynomial());
    if (lr != zr) c.fail("rank mod L [" + ranks_text(lr) + "] differs from integral rank [" + ranks_text(zr) + "]");
}

using SuiteFn = std::function<void(Checker&, const Arrangement&, std::uint64_t)>;

const std::map<std::string, SuiteFn>& suites() {
    static const std::map<std::string, SuiteFn> s{
        {"equiv", check_equiv},
        {"tilde-div", check_tildediv},
        {"psi-phi", check_psi_phi},
        {"rank-triple", check_rank_triple},
        {"short-exact", check_short_exact},
    };
    return s;
}

const SuiteFn& suite(const std::string& name) {
    auto it = suites().find(name);
    if (it == suites().end()) {
        std::string known;
        for (const auto& n : suite_names()) known += (known.empty() ? "" : ", ") + n;
        throw Error("unknown suite '" + name + "' (known: " + known + ")");
    }
    return it->second;
}

bool still_fails(const std::string& name, const Arrangement& a, std::uint64_t seed) {
    try {
        return !check_case(name, a, seed).ok();
    } catch (const Error&) {
        return false;
    }
}

} // namespace

Arrangement random_arrangement(std::uint64_t seed, const Field& f, std::size_t dim, std::size_t count) {
    if (count > 0 && dim == 0) throw Error("no hyperplanes exist in dimension 0");
    if (f.is_finite()) {
        std::uint64_t q = f.characteristic();
        std::uint64_t available = q * ((power_capped(q, dim) - 1) / (q - 1));
        if (count > available)
            throw Error("cannot place " + std::to_string(count) + " distinct hyperplanes in A^" + std::to_string(dim) +
                        " over " + f.to_string() + " (only " + std::to_string(available) + " exist)");
    }
    std::mt19937_64 rng(seed);
    std::vector<Row> rows;
    std::vector<Hyperplane> seen;
    for (int attempt = 0; rows.size() < count; ++attempt) {
        if (attempt > 100000) throw Error("could not draw distinct hyperplanes");
        Row r;
        for (std::size_t i = 0; i <= dim; ++i) r.push_back(random_scalar(rng, f, false));
        bool linear = std::any_of(r.begin() + 1, r.end(), [](const Scalar& s) { return !s.is_zero(); });
        if (!linear) continue;
        Hyperplane h = Hyperplane::normalize(r).first;
        if (std::find(seen.begin(), seen.end(), h) != seen.end()) continue;
        seen.push_back(h);
        rows.push_back(h.coeffs());
    }
    return Arrangement::from_rows(f, dim, rows);
}

Arrangement case_arrangement(std::uint64_t seed) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 7);
    static const Field fields[] = {Field::prime(5), Field::prime(7), Field::prime(11), Field::rationals()};
    const Field& f = fields[rng() % 4];
    std::size_t dim = 1 + rng() % 3;
    std::size_t count = rng() % 6;
    if (dim == 1 && f.is_finite()) count = std::min<std::size_t>(count, f.characteristic());
    return random_arrangement(rng(), f, dim, count);
}

Arrangement boolean_arrangement(const Field& f, std::size_t n) {
    std::vector<Row> rows;
    for (std::size_t i = 0; i < n; ++i) {
        Row r(n + 1, Scalar::zero(f));
        r[i + 1] = Scalar::one(f);
        rows.push_back(r);
    }
    return Arrangement::from_rows(f, n, rows);
}

Arrangement pencil_arrangement(const Field& f) {
    return Arrangement::from_rows(f, 2, {row_of(f, {0, 1, 0}), row_of(f, {0, 0, 1}), row_of(f, {0, 1, 1})});
}

Arrangement triangle_arrangement(const Field& f) {
    return Arrangement::from_rows(f, 2, {row_of(f, {0, 1, 0}), row_of(f, {0, 0, 1}), row_of(f, {-1, 1, 1})});
}

Arrangement braid_arrangement(const Field& f, std::size_t n) {
    std::vector<Row> rows;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Row r(n + 1, Scalar::zero(f));
            r[i + 1] = Scalar::one(f);
            r[j + 1] = -Scalar::one(f);
            rows.push_back(r);
        }
    return Arrangement::from_rows(f, n, rows);
}

std::vector<NamedArrangement> standard_corpus(const Field& f) {
    std::vector<NamedArrangement> out;
    for (std::size_t n = 1; n <= 4; ++n) out.push_back({"boolean" + std::to_string(n), boolean_arrangement(f, n)});
    out.push_back({"pencil", pencil_arrangement(f)});
    out.push_back({"triangle", triangle_arrangement(f)});
    out.push_back({"braid3", braid_arrangement(f, 3)});
    return out;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [n, fn] : suites()) v.push_back(n);
        return v;
    }();
    return names;
}

CaseOutcome check_case(const std::string& name, const Arrangement& a, std::uint64_t seed) {
    const SuiteFn& fn = suite(name);
    Checker c;
    fn(c, a, seed);
    return c.out;
}

Arrangement minimize(const std::string& name, const Arrangement& a, std::uint64_t seed) {
    suite(name);
    Arrangement cur = a;
    for (bool progress = true; progress;) {
        progress = false;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            Arrangement smaller = cur.deletion(static_cast<int>(i));
            if (still_fails(name, smaller, seed)) {
                cur = smaller;
                progress = true;
                break;
            }
        }
    }
    const Field& f = cur.field();
    for (bool progress = true; progress;) {
        progress = false;
        for (std::size_t i = 0; i < cur.size() && !progress; ++i)
            for (std::size_t k = 0; k <= cur.dim() && !progress; ++k)
                for (long target : {0L, 1L}) {
                    if (cur[i].coeffs()[k] == Scalar(f, target)) continue;
                    std::vector<Row> rows;
                    for (const auto& h : cur.hyperplanes()) rows.push_back(h.coeffs());
                    rows[i][k] = Scalar(f, target);
                    try {
                        Arrangement next = Arrangement::from_rows(f, cur.dim(), rows);
                        if (still_fails(name, next, seed)) {
                            cur = next;
                            progress = true;
                            break;
                        }
                    } catch (const Error&) {
                    }
                }
    }
    return cur;
}

VerifyReport run_suite(const std::string& name, std::size_t seeds, std::uint64_t first_seed) {
    suite(name);
    auto start = std::chrono::steady_clock::now();
    std::vector<CaseOutcome> outcomes(seeds);
    std::vector<std::optional<Arrangement>> arrangements(seeds);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < seeds;) {
            std::uint64_t seed = first_seed + i;
            try {
                arrangements[i] = case_arrangement(seed);
                outcomes[i] = check_case(name, *arrangements[i], seed);
            } catch (const Error& e) {
                outcomes[i].failures.push_back({std::string("error: ") + e.what(), {}});
            }
        }
    };
    std::size_t threads = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min(threads, seeds); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    VerifyReport rep;
    rep.suite = name;
    rep.cases = seeds;
    for (std::size_t i = 0; i < seeds; ++i) {
        rep.inconclusive += outcomes[i].inconclusive;
        if (outcomes[i].ok()) continue;
        std::uint64_t seed = first_seed + i;
        CaseFailure cf;
        cf.index = i;
        cf.seed = seed;
        if (arrangements[i]) {
            Arrangement small = minimize(name, *arrangements[i], seed);
            CaseOutcome again = check_case(name, small, seed);
            cf.failure = again.ok() ? outcomes[i].failures.front() : again.failures.front();
            cf.arrangement = arrangement_to_json(again.ok() ? *arrangements[i] : small);
        } else {
            cf.failure = outcomes[i].failures.front();
        }
        rep.failures.push_back(std::move(cf));
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

std::string VerifyReport::to_text() const {
    std::ostringstream os;
    os << "suite " << suite << ": " << cases << " cases, " << failures.size() << " failures, " << inconclusive
       << " inconclusive";
    os.setf(std::ios::fixed);
    os.precision(2);
    os << " (" << seconds << " s)\n";
    for (const auto& f : failures) {
        os << "  case " << f.index << " (seed " << f.seed << "): " << f.failure.what << "\n";
        if (!f.failure.expression.empty()) os << "    expression: " << f.failure.expression << "\n";
        if (!f.arrangement.is_null()) os << "    arrangement: " << f.arrangement.dump() << "\n";
    }
    return os.str();
}

json VerifyReport::to_json() const {
    json fs = json::array();
    for (const auto& f : failures)
        fs.push_back({{"case", f.index},
                      {"seed", f.seed},
                      {"message", f.failure.what},
                      {"expression", f.failure.expression},
                      {"arrangement", f.arrangement}});
    return {{"suite", suite},
            {"cases", cases},
            {"inconclusive", inconclusive},
            {"seconds", seconds},
            {"failures", fs}};
}

} // namespace hypermw
