#include "hypermw/scalar.hpp"

#include <cctype>
#include <sstream>

namespace hypermw {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t reduce_mpz(const mpz_class& z, std::uint64_t p) {
    mpz_class m = z % static_cast<unsigned long>(p);
    if (m < 0) m += static_cast<unsigned long>(p);
    return m.get_ui();
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

mpz_class squarefree_part(mpz_class n) {
    mpz_class sign = n < 0 ? -1 : 1;
    n = abs(n);
    mpz_class out = 1;
    for (mpz_class d = 2; d * d <= n; ++d) {
        int e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
            n /= d;
            ++e;
        }
        if (e % 2) out *= d;
    }
    out *= n;
    return sign * out;
}

} // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Field Field::prime(std::uint64_t p) {
    if (p == 2) throw Error("characteristic 2 is not supported");
    if (!is_prime(p)) throw Error("GF(" + std::to_string(p) + "): modulus is not prime");
    if (p >= (1ULL << 62)) throw Error("prime too large");
    return Field(Kind::Prime, p);
}

Field Field::parse(std::string_view text) {
    text = trim(text);
    if (text == "Q") return rationals();
    if (text.size() > 4 && text.substr(0, 3) == "GF(" && text.back() == ')') {
        auto body = text.substr(3, text.size() - 4);
        std::uint64_t p = 0;
        if (body.empty()) throw Error("bad field spec: " + std::string(text));
        for (char c : body) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw Error("bad field spec: " + std::string(text));
            p = p * 10 + static_cast<std::uint64_t>(c - '0');
            if (p > (1ULL << 62)) throw Error("prime too large");
        }
        return prime(p);
    }
    throw Error("bad field spec: " + std::string(text));
}

std::string Field::to_string() const {
    return is_rational() ? std::string("Q") : "GF(" + std::to_string(p_) + ")";
}

Scalar::Scalar(Field f, long value) : Scalar(f, mpq_class(value)) {}

Scalar::Scalar(Field f, const mpq_class& value) : field_(f) {
    if (f.is_rational()) {
        q_ = value;
        q_.canonicalize();
    } else {
        auto p = f.characteristic();
        auto num = reduce_mpz(value.get_num(), p);
        auto den = reduce_mpz(value.get_den(), p);
        if (den == 0) throw Error("denominator vanishes in " + f.to_string());
        r_ = mulmod(num, powmod(den, p - 2, p), p);
    }
}

Scalar Scalar::parse(Field f, std::string_view text) {
    text = trim(text);
    if (text.empty()) throw Error("empty scalar");
    std::string s(text);
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw Error("bad scalar: " + s);
    bool slash = false;
    for (std::size_t i = start; i < s.size(); ++i) {
        if (s[i] == '/' && !slash && i > start && i + 1 < s.size()) {
            slash = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw Error("bad scalar: " + s);
    }
    if (s[0] == '+') s.erase(0, 1);
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw Error("bad scalar: " + s);
    if (q.get_den() == 0) throw Error("division by zero in scalar: " + s);
    q.canonicalize();
    return Scalar(f, q);
}

bool Scalar::is_zero() const { return field_.is_rational() ? q_ == 0 : r_ == 0; }
bool Scalar::is_one() const { return field_.is_rational() ? q_ == 1 : r_ == 1; }
bool Scalar::is_minus_one() const {
    return field_.is_rational() ? q_ == -1 : r_ == field_.characteristic() - 1;
}

void Scalar::check_same(const Scalar& o) const {
    if (!(field_ == o.field_))
        throw Error("mixed base fields: " + field_.to_string() + " vs " + o.field_.to_string());
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same(o);
    Scalar r = *this;
    if (field_.is_rational()) r.q_ += o.q_;
    else r.r_ = (r_ + o.r_) % field_.characteristic();
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    check_same(o);
    Scalar r = *this;
    if (field_.is_rational()) r.q_ *= o.q_;
    else r.r_ = mulmod(r_, o.r_, field_.characteristic());
    return r;
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    if (field_.is_rational()) r.q_ = -q_;
    else r.r_ = r_ == 0 ? 0 : field_.characteristic() - r_;
    return r;
}

std::optional<Scalar> Scalar::try_inv() const {
    if (is_zero()) return std::nullopt;
    Scalar r = *this;
    if (field_.is_rational()) r.q_ = 1 / q_;
    else r.r_ = powmod(r_, field_.characteristic() - 2, field_.characteristic());
    return r;
}

Scalar Scalar::inv() const {
    auto r = try_inv();
    if (!r) throw Error("division by zero");
    return *r;
}

Scalar Scalar::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    Scalar r = one(field_), b = *this;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

SquareClass Scalar::square_class() const {
    if (is_zero()) throw Error("square class of zero");
    SquareClass c;
    if (field_.is_finite()) {
        auto p = field_.characteristic();
        c.finite = true;
        c.square = powmod(r_, (p - 1) / 2, p) == 1;
    } else {
        c.squarefree = squarefree_part(q_.get_num() * q_.get_den());
    }
    return c;
}

std::string Scalar::to_string() const {
    if (field_.is_finite()) return std::to_string(r_);
    return q_.get_str();
}

bool Scalar::operator==(const Scalar& o) const {
    if (!(field_ == o.field_)) return false;
    return field_.is_rational() ? q_ == o.q_ : r_ == o.r_;
}

std::strong_ordering Scalar::operator<=>(const Scalar& o) const {
    check_same(o);
    bool a = is_minus_one(), b = o.is_minus_one();
    if (a != b) return a ? std::strong_ordering::less : std::strong_ordering::greater;
    if (field_.is_finite()) return r_ <=> o.r_;
    int c = cmp(q_, o.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

} // namespace hypermw
