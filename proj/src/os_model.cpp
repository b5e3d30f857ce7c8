#include "hypermw/os_model.hpp"

#include <algorithm>
#include <sstream>

namespace hypermw {

namespace {

std::string monomial_text(const IndexSet& s) {
    if (s.empty()) return "1";
    std::string out;
    for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "^Y" : "Y") + std::to_string(s[k] + 1);
    return out;
}

std::vector<IndexSet> subsets(std::size_t n) {
    std::vector<IndexSet> out;
    for (std::uint64_t mask = 1; mask < (1ULL << n); ++mask) {
        IndexSet s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) s.push_back(static_cast<int>(i));
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace

EtaInt EtaInt::eta(int power) {
    if (power < 1) throw Error("eta power must be positive");
    EtaInt r;
    r.eta_.insert(power);
    return r;
}

EtaInt EtaInt::operator+(const EtaInt& o) const {
    EtaInt r = *this;
    if (__builtin_add_overflow(z_, o.z_, &r.z_)) throw Error("integer overflow");
    for (int m : o.eta_)
        if (!r.eta_.erase(m)) r.eta_.insert(m);
    return r;
}

EtaInt EtaInt::operator-() const {
    EtaInt r = *this;
    r.z_ = -z_;
    return r;
}

EtaInt EtaInt::operator*(const EtaInt& o) const {
    EtaInt r;
    if (__builtin_mul_overflow(z_, o.z_, &r.z_)) throw Error("integer overflow");
    auto toggle = [&](int m) {
        if (!r.eta_.erase(m)) r.eta_.insert(m);
    };
    if (z_ % 2)
        for (int m : o.eta_) toggle(m);
    if (o.z_ % 2)
        for (int m : eta_) toggle(m);
    for (int a : eta_)
        for (int b : o.eta_) toggle(a + b);
    return r;
}

std::string EtaInt::to_string() const {
    std::ostringstream os;
    bool first = true;
    if (z_ != 0 || eta_.empty()) {
        os << z_;
        first = false;
    }
    for (int m : eta_) {
        os << (first ? "" : " + ") << "eta";
        if (m > 1) os << "^" << m;
        first = false;
    }
    return os.str();
}

ExtElement ExtElement::monomial(IndexSet s, EtaInt c) {
    if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end())
        throw Error("wedge monomial indices must be strictly increasing");
    ExtElement r;
    r.add(s, c);
    return r;
}

void ExtElement::add(const IndexSet& s, const EtaInt& c) {
    auto it = terms_.find(s);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(s, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
}

std::size_t ExtElement::top_degree() const {
    std::size_t d = 0;
    for (const auto& [s, c] : terms_) d = std::max(d, s.size());
    return d;
}

ExtElement ExtElement::operator+(const ExtElement& o) const {
    ExtElement r = *this;
    for (const auto& [s, c] : o.terms_) r.add(s, c);
    return r;
}

ExtElement ExtElement::operator-() const {
    ExtElement r;
    for (const auto& [s, c] : terms_) r.add(s, -c);
    return r;
}

std::string ExtElement::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    auto emit = [&](bool negative, const std::string& coef, const std::string& mono) {
        if (first) os << (negative ? "-" : "");
        else os << (negative ? " - " : " + ");
        first = false;
        if (coef.empty()) os << mono;
        else if (mono == "1") os << coef;
        else os << coef << "*" << mono;
    };
    for (const auto& [s, c] : terms_) {
        std::string mono = monomial_text(s);
        long z = c.integer_part();
        if (z != 0) {
            long a = z < 0 ? -z : z;
            emit(z < 0, a == 1 ? "" : std::to_string(a), mono);
        }
        for (int m : c.eta_powers()) emit(false, m == 1 ? "eta" : "eta^" + std::to_string(m), mono);
    }
    return os.str();
}

ExtElement operator*(const EtaInt& c, const ExtElement& x) {
    ExtElement r;
    for (const auto& [s, k] : x.terms()) r += ExtElement::monomial(s, c * k);
    return r;
}

ExtElement wedge(const ExtElement& x, const ExtElement& y) {
    ExtElement r;
    for (const auto& [a, ca] : x.terms())
        for (const auto& [b, cb] : y.terms()) {
            IndexSet m;
            std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m));
            if (m.size() != a.size() + b.size()) continue;
            long inversions = 0;
            for (int i : a)
                for (int j : b)
                    if (i > j) ++inversions;
            EtaInt c = ca * cb;
            r += ExtElement::monomial(m, inversions % 2 ? -c : c);
        }
    return r;
}

EtaInt collapse(const MWElement& c) {
    EtaInt r;
    for (const auto& [m, k] : c.terms()) {
        if (!m.symbols.empty()) continue;
        if (m.eta == 0) r = r + EtaInt(k);
        else if (k % 2) r = r + EtaInt::eta(m.eta);
    }
    return r;
}

ExtElement tilde_div_product(const ExtElement& x, const ExtElement& y) {
    return x + y + EtaInt::eta() * wedge(x, y);
}

ExtElement tilde_div(const Unit& f) {
    ExtElement r;
    for (auto [i, n] : f.exponents) {
        ExtElement atom = n > 0 ? ExtElement::generator(i) : -ExtElement::generator(i);
        for (long k = 0; k < (n > 0 ? n : -n); ++k) r = tilde_div_product(r, atom);
    }
    return r;
}

std::vector<ExtElement> l_generators(const Arrangement& a) {
    std::vector<ExtElement> out;
    for (const auto& s : subsets(a.size())) {
        if (!a.intersects(s)) {
            out.push_back(ExtElement::monomial(s));
            continue;
        }
        if (a.linear_rank(s) >= s.size()) continue;
        ExtElement g;
        for (std::size_t j = 0; j < s.size(); ++j) {
            IndexSet t = s;
            t.erase(t.begin() + static_cast<long>(j));
            g += ExtElement::monomial(t, j % 2 ? -1 : 1);
        }
        out.push_back(g);
    }
    return out;
}

OSModel::OSModel(Arrangement a) : arr_(std::move(a)) {
    for (const auto& s : arr_.nbc_sets()) nbc_.insert(s);
}

const ExtElement& OSModel::reduce_monomial(const IndexSet& s) const {
    if (auto it = memo_.find(s); it != memo_.end()) return it->second;
    ExtElement out;
    if (nbc_.count(s)) {
        out = ExtElement::monomial(s);
    } else if (arr_.intersects(s)) {
        const Circuit* circuit = nullptr;
        for (const auto& c : arr_.circuits()) {
            if (!c.central()) continue;
            IndexSet b = c.broken();
            if (std::includes(s.begin(), s.end(), b.begin(), b.end())) {
                circuit = &c;
                break;
            }
        }
        if (!circuit) throw Error("dependent monomial without a broken circuit");
        IndexSet b = circuit->broken();
        IndexSet rest;
        std::set_difference(s.begin(), s.end(), b.begin(), b.end(), std::back_inserter(rest));
        long swaps = 0;
        for (int t : b)
            for (int r : rest)
                if (r < t) ++swaps;
        // Y_B = -sum_{j >= 1} (-1)^j Y_{C - c_j}
        ExtElement yb;
        const IndexSet& cm = circuit->members;
        for (std::size_t j = 1; j < cm.size(); ++j) {
            IndexSet t = cm;
            t.erase(t.begin() + static_cast<long>(j));
            yb += ExtElement::monomial(t, j % 2 ? 1 : -1);
        }
        ExtElement replaced = wedge(yb, ExtElement::monomial(rest));
        if (swaps % 2) replaced = -replaced;
        for (const auto& [m, c] : replaced.terms()) out += c * reduce_monomial(m);
    }
    return memo_.emplace(s, std::move(out)).first->second;
}

ExtElement OSModel::nf_mod_L(const ExtElement& x) const {
    ExtElement r;
    for (const auto& [s, c] : x.terms()) r += c * reduce_monomial(s);
    return r;
}

ExtElement OSModel::psi(const PresElement& x) const {
    ExtElement r;
    for (const auto& [w, c] : x.terms()) {
        for (const auto& u : w) arr_.validate_unit(u);
        ExtElement term = ExtElement::monomial({}, collapse(canonical_coefficient(c)));
        for (const auto& u : w) term = wedge(term, tilde_div(u));
        r += term;
    }
    return nf_mod_L(r);
}

PresElement OSModel::phi(const IndexSet& monomial) const {
    Word w;
    for (int i : monomial) {
        if (i < 0 || static_cast<std::size_t>(i) >= arr_.size()) throw Error("monomial index out of range");
        w.push_back(Unit::hyperplane(arr_.field(), i));
    }
    return PresElement::word(w, MWElement::one(arr_.field()));
}

PresElement OSModel::phi(const ExtElement& x) const {
    PresElement r(arr_.field());
    const Field& f = arr_.field();
    for (const auto& [s, c] : x.terms()) {
        MWElement k = MWElement::integer(f, c.integer_part());
        for (int m : c.eta_powers()) k += MWElement::monomial(f, 1, Monomial{m, {}});
        r += k * phi(s);
    }
    return r;
}

ExtElement OSModel::collapse_nf(const NormalForm& x) const {
    ExtElement r;
    for (const auto& [s, c] : x) r += ExtElement::monomial(s, collapse(c));
    return r;
}

std::vector<long> OSModel::rank_mod_L() const { return degree_counts(arr_.nbc_sets()); }

} // namespace hypermw
