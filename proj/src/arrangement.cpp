#include "hypermw/arrangement.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace hypermw {

std::pair<Hyperplane, Scalar> Hyperplane::normalize(Row raw) {
    if (raw.empty()) throw Error("hyperplane needs at least a constant term");
    std::size_t k = 1;
    while (k < raw.size() && raw[k].is_zero()) ++k;
    if (k == raw.size()) throw Error("hyperplane has zero linear part");
    Scalar s = raw[k];
    Scalar inv = s.inv();
    for (auto& c : raw) c *= inv;
    return {Hyperplane(std::move(raw)), s};
}

std::size_t Hyperplane::pivot() const {
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
        if (!coeffs_[k].is_zero()) return k;
    return 0;
}

Scalar Hyperplane::evaluate(const Row& point) const {
    if (point.size() != dim()) throw Error("point dimension mismatch");
    Scalar v = coeffs_[0];
    for (std::size_t i = 0; i < point.size(); ++i) v += coeffs_[i + 1] * point[i];
    return v;
}

namespace {

// Appends " + c*x" style terms; constant printed last.
std::string format_form(const Row& c) {
    std::ostringstream os;
    bool first = true;
    auto emit = [&](const Scalar& coef, const std::string& var) {
        if (coef.is_zero()) return;
        std::string txt = coef.to_string();
        bool neg = coef.field().is_rational() && txt[0] == '-';
        if (neg) txt.erase(0, 1);
        if (first) os << (neg ? "-" : "");
        else os << (neg ? " - " : " + ");
        if (var.empty()) os << txt;
        else if (txt == "1") os << var;
        else os << txt << "*" << var;
        first = false;
    };
    for (std::size_t i = 1; i < c.size(); ++i) emit(c[i], "x" + std::to_string(i));
    emit(c[0], "");
    if (first) os << "0";
    return os.str();
}

} // namespace

std::string Hyperplane::to_string() const { return format_form(coeffs_); }

Unit Unit::constant(Scalar c) {
    if (c.is_zero()) throw Error("zero is not a unit");
    return Unit{std::move(c), {}};
}

Unit Unit::hyperplane(Field f, int index, long power) {
    Unit u{Scalar::one(f), {}};
    if (power != 0) u.exponents[index] = power;
    return u;
}

long Unit::exponent(int index) const {
    auto it = exponents.find(index);
    return it == exponents.end() ? 0 : it->second;
}

Unit unit_mul(const Unit& a, const Unit& b) {
    Unit r{a.lambda * b.lambda, a.exponents};
    for (auto [i, n] : b.exponents) {
        long& e = r.exponents[i];
        e += n;
        if (e == 0) r.exponents.erase(i);
    }
    return r;
}

Unit unit_inverse(const Unit& a) {
    Unit r{a.lambda.inv(), {}};
    for (auto [i, n] : a.exponents) r.exponents[i] = -n;
    return r;
}

Arrangement::Arrangement(Field f, std::size_t dim, std::vector<Hyperplane> hyperplanes)
    : field_(f), dim_(dim), hyperplanes_(std::move(hyperplanes)) {
    for (std::size_t i = 0; i < hyperplanes_.size(); ++i) {
        const auto& h = hyperplanes_[i];
        if (h.dim() != dim_) throw Error("hyperplane " + std::to_string(i + 1) + " has wrong dimension");
        for (const auto& c : h.coeffs())
            if (!(c.field() == field_)) throw Error("hyperplane over a different field");
        for (std::size_t j = 0; j < i; ++j)
            if (hyperplanes_[j] == h)
                throw Error("hyperplanes " + std::to_string(j + 1) + " and " + std::to_string(i + 1) +
                            " coincide");
    }
}

Arrangement Arrangement::from_rows(Field f, std::size_t dim, const std::vector<Row>& rows) {
    std::vector<Hyperplane> hs;
    for (const auto& r : rows) {
        if (r.size() != dim + 1) throw Error("hyperplane row must have dim+1 entries");
        hs.push_back(Hyperplane::normalize(r).first);
    }
    return Arrangement(f, dim, std::move(hs));
}

std::optional<int> Arrangement::find(const Hyperplane& h) const {
    for (std::size_t i = 0; i < hyperplanes_.size(); ++i)
        if (hyperplanes_[i] == h) return static_cast<int>(i);
    return std::nullopt;
}

Arrangement Arrangement::deletion(int index) const {
    if (index < 0 || static_cast<std::size_t>(index) >= size())
        throw Error("deletion: hyperplane index out of range");
    auto hs = hyperplanes_;
    hs.erase(hs.begin() + index);
    return Arrangement(field_, dim_, std::move(hs));
}

Restriction Arrangement::restriction(int index) const {
    if (index < 0 || static_cast<std::size_t>(index) >= size())
        throw Error("restriction: hyperplane index out of range");
    if (dim_ == 0) throw Error("restriction in dimension 0");
    const auto& y = hyperplanes_[index].coeffs();
    std::size_t p = hyperplanes_[index].pivot();

    std::vector<Hyperplane> out;
    std::vector<RestrictedImage> images(size());
    for (std::size_t i = 0; i < size(); ++i) {
        if (static_cast<int>(i) == index) continue;
        const auto& d = hyperplanes_[i].coeffs();
        // substitute x_p = -(y0 + sum_{k != p} y_k x_k)
        Row sub;
        sub.push_back(d[0] - d[p] * y[0]);
        bool linear_zero = true;
        for (std::size_t k = 1; k <= dim_; ++k) {
            if (k == p) continue;
            sub.push_back(d[k] - d[p] * y[k]);
            if (!sub.back().is_zero()) linear_zero = false;
        }
        auto& img = images[i];
        if (linear_zero) {
            img.kind = RestrictedImage::Kind::Constant;
            img.value = sub[0];
            continue;
        }
        auto [h, mu] = Hyperplane::normalize(std::move(sub));
        img.kind = RestrictedImage::Kind::Form;
        img.value = mu;
        auto it = std::find(out.begin(), out.end(), h);
        img.target = static_cast<int>(it - out.begin());
        if (it == out.end()) out.push_back(std::move(h));
    }
    Restriction r{Arrangement(field_, dim_ - 1, std::move(out)), index, p, std::move(images)};
    return r;
}

bool Arrangement::intersects(const IndexSet& s) const {
    Matrix m;
    for (int i : s) {
        const auto& c = hyperplanes_.at(i).coeffs();
        Row r(c.begin() + 1, c.end());
        r.push_back(c[0]);
        m.push_back(std::move(r));
    }
    auto e = row_reduce(field_, std::move(m), dim_ + 1);
    return e.pivots.empty() || e.pivots.back() != dim_;
}

std::size_t Arrangement::linear_rank(const IndexSet& s) const {
    Matrix m;
    for (int i : s) {
        const auto& c = hyperplanes_.at(i).coeffs();
        m.emplace_back(c.begin() + 1, c.end());
    }
    return rank(field_, m, dim_);
}

namespace {

std::vector<IndexSet> all_subsets(std::size_t n) {
    if (n > 20) throw Error("too many hyperplanes for subset enumeration");
    std::vector<IndexSet> out;
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        IndexSet s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) s.push_back(static_cast<int>(i));
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const IndexSet& a, const IndexSet& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

bool is_subset(const IndexSet& small, const IndexSet& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

} // namespace

std::vector<Flat> Arrangement::intersection_poset() const {
    std::map<IndexSet, Flat> by_members;
    for (const auto& s : all_subsets(size())) {
        if (!intersects(s)) continue;
        std::size_t r = linear_rank(s);
        IndexSet members;
        for (std::size_t i = 0; i < size(); ++i) {
            IndexSet t = s;
            if (std::find(t.begin(), t.end(), static_cast<int>(i)) == t.end()) {
                t.push_back(static_cast<int>(i));
                std::sort(t.begin(), t.end());
            }
            if (intersects(t) && linear_rank(t) == r) members.push_back(static_cast<int>(i));
        }
        if (by_members.count(members)) continue;
        Flat f;
        Matrix m;
        for (int i : members) {
            const auto& c = hyperplanes_[i].coeffs();
            Row row(c.begin() + 1, c.end());
            row.push_back(c[0]);
            m.push_back(std::move(row));
        }
        f.equations = row_reduce(field_, std::move(m), dim_ + 1).rows;
        f.codim = r;
        f.members = members;
        by_members.emplace(members, std::move(f));
    }
    std::vector<Flat> flats;
    for (auto& [k, f] : by_members) flats.push_back(std::move(f));
    std::sort(flats.begin(), flats.end(), [](const Flat& a, const Flat& b) {
        return a.codim != b.codim ? a.codim < b.codim : a.members < b.members;
    });
    // Z < X iff Z strictly contains X as a space iff members(Z) ⊊ members(X).
    for (std::size_t x = 0; x < flats.size(); ++x) {
        if (flats[x].members.empty()) {
            flats[x].moebius = 1;
            continue;
        }
        long sum = 0;
        for (std::size_t z = 0; z < x; ++z)
            if (flats[z].members.size() < flats[x].members.size() &&
                is_subset(flats[z].members, flats[x].members))
                sum += flats[z].moebius;
        flats[x].moebius = -sum;
    }
    return flats;
}

std::vector<long> Arrangement::poincare_polynomial() const {
    std::vector<long> coeffs(1, 0);
    for (const auto& f : intersection_poset()) {
        if (coeffs.size() <= f.codim) coeffs.resize(f.codim + 1, 0);
        coeffs[f.codim] += f.moebius < 0 ? -f.moebius : f.moebius;
    }
    return coeffs;
}

const std::vector<Circuit>& Arrangement::circuits() const {
    if (circuits_) return *circuits_;
    std::vector<Circuit> out;
    for (const auto& s : all_subsets(size())) {
        if (s.size() < 2 || s.size() > dim_ + 1) continue;
        if (linear_rank(s) + 1 != s.size()) continue;
        // dependency of the linear parts: kernel of the transpose
        Matrix t(dim_, Row(s.size(), Scalar::zero(field_)));
        for (std::size_t j = 0; j < s.size(); ++j)
            for (std::size_t k = 0; k < dim_; ++k) t[k][j] = hyperplanes_[s[j]].coeffs()[k + 1];
        auto ker = kernel(field_, t, s.size());
        if (ker.size() != 1) continue;
        auto lambda = ker[0];
        if (std::any_of(lambda.begin(), lambda.end(), [](const Scalar& x) { return x.is_zero(); }))
            continue;
        Scalar l0 = Scalar::zero(field_);
        for (std::size_t j = 0; j < s.size(); ++j) l0 -= lambda[j] * hyperplanes_[s[j]].constant();
        Scalar scale = l0.is_zero() ? lambda[0].inv() : l0.inv();
        for (auto& x : lambda) x *= scale;
        l0 *= scale;
        out.push_back(Circuit{s, std::move(lambda), l0});
    }
    circuits_ = std::move(out);
    return *circuits_;
}

std::vector<IndexSet> Arrangement::nbc_sets() const {
    std::vector<IndexSet> broken;
    for (const auto& c : circuits())
        if (c.central()) broken.push_back(c.broken());
    std::vector<IndexSet> out;
    for (const auto& s : all_subsets(size())) {
        if (s.size() > dim_) continue;
        if (!intersects(s) || linear_rank(s) != s.size()) continue;
        bool ok = std::none_of(broken.begin(), broken.end(),
                               [&](const IndexSet& b) { return is_subset(b, s); });
        if (ok) out.push_back(s);
    }
    return out;
}

void Arrangement::validate_unit(const Unit& u) const {
    if (!(u.lambda.field() == field_)) throw Error("unit over a different field");
    if (u.lambda.is_zero()) throw Error("unit has zero scalar");
    for (auto [i, n] : u.exponents)
        if (i < 0 || static_cast<std::size_t>(i) >= size())
            throw Error("unit uses hyperplane " + std::to_string(i + 1) + " not in the arrangement");
}

std::string Arrangement::to_string() const {
    std::ostringstream os;
    os << field_.to_string() << ", A^" << dim_ << ", " << size() << " hyperplanes";
    for (std::size_t i = 0; i < size(); ++i) os << "\n  " << (i + 1) << ": " << hyperplanes_[i].to_string();
    return os.str();
}

Unit Restriction::restrict_unit(const Unit& u) const {
    if (u.exponent(removed) != 0) throw Error("unit has a zero or pole along the restricting hyperplane");
    Unit r{u.lambda, {}};
    for (auto [i, n] : u.exponents) {
        const auto& img = images.at(i);
        if (img.kind == RestrictedImage::Kind::Constant) {
            r.lambda *= img.value.pow(n);
        } else {
            r.lambda *= img.value.pow(n);
            long& e = r.exponents[img.target];
            e += n;
            if (e == 0) r.exponents.erase(img.target);
        }
    }
    return r;
}

Unit Restriction::lift(int restricted_index) const {
    for (std::size_t i = 0; i < images.size(); ++i) {
        const auto& img = images[i];
        if (img.kind == RestrictedImage::Kind::Form && img.target == restricted_index) {
            Unit u = Unit::hyperplane(restricted.field(), static_cast<int>(i));
            u.lambda = img.value.inv();
            return u;
        }
    }
    throw Error("restricted hyperplane has no preimage");
}

std::vector<long> degree_counts(const std::vector<IndexSet>& sets) {
    std::vector<long> out(1, 0);
    for (const auto& s : sets) {
        if (out.size() <= s.size()) out.resize(s.size() + 1, 0);
        ++out[s.size()];
    }
    return out;
}

namespace {

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            auto e = ea;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            auto it = r.find(e);
            if (it == r.end()) r.emplace(e, ca * cb);
            else {
                it->second += ca * cb;
                if (it->second.is_zero()) r.erase(it);
            }
        }
    return r;
}

} // namespace

Polynomial units_sum_numerator(const Arrangement& a, const std::vector<Unit>& units) {
    std::map<int, long> denom;
    for (const auto& u : units) {
        a.validate_unit(u);
        for (auto [i, n] : u.exponents)
            if (n < 0) denom[i] = std::max(denom[i], -n);
    }
    std::size_t nv = a.dim();
    Polynomial total;
    for (const auto& u : units) {
        Polynomial p{{std::vector<long>(nv, 0), u.lambda}};
        std::map<int, long> ex = denom;
        for (auto [i, n] : u.exponents) ex[i] += n;
        for (auto [i, n] : ex) {
            Polynomial form;
            const auto& c = a[i].coeffs();
            if (!c[0].is_zero()) form.emplace(std::vector<long>(nv, 0), c[0]);
            for (std::size_t k = 0; k < nv; ++k) {
                if (c[k + 1].is_zero()) continue;
                std::vector<long> e(nv, 0);
                e[k] = 1;
                form.emplace(e, c[k + 1]);
            }
            for (long j = 0; j < n; ++j) p = poly_mul(p, form);
        }
        for (auto& [e, c] : p) {
            auto it = total.find(e);
            if (it == total.end()) total.emplace(e, c);
            else {
                it->second += c;
                if (it->second.is_zero()) total.erase(it);
            }
        }
    }
    return total;
}

} // namespace hypermw
