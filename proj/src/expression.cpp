#include "hypermw/expression.hpp"

#include <algorithm>
#include <cctype>

namespace hypermw {

namespace {

struct Token {
    enum Kind { Number, Ident, Symbol, End } kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isdigit(c)) {
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (i + 1 < s.size() && s[i] == '/' && std::isdigit(static_cast<unsigned char>(s[i + 1]))) {
                ++i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            }
            out.push_back({Token::Number, std::string(s.substr(start, i - start)), start});
            continue;
        }
        if (std::isalpha(c)) {
            while (i < s.size() && std::isalnum(static_cast<unsigned char>(s[i]))) ++i;
            out.push_back({Token::Ident, std::string(s.substr(start, i - start)), start});
            continue;
        }
        if (c == 0xC2 && i + 1 < s.size() && static_cast<unsigned char>(s[i + 1]) == 0xB7) {
            out.push_back({Token::Symbol, "*", start});
            i += 2;
            continue;
        }
        if (std::string_view("[]<>();*+-^/").find(static_cast<char>(c)) != std::string_view::npos) {
            out.push_back({Token::Symbol, std::string(1, static_cast<char>(c)), start});
            ++i;
            continue;
        }
        throw ParseError("unexpected character '" + std::string(1, static_cast<char>(c)) + "'", start);
    }
    out.push_back({Token::End, "", s.size()});
    return out;
}

class Parser {
public:
    Parser(std::string_view text, const Field& f, const Arrangement* a)
        : text_(text), toks_(lex(text)), field_(f), arr_(a) {}

    PresElement element() {
        PresElement r(field_);
        bool negative = accept("-");
        if (!negative) accept("+");
        PresElement t = term();
        r = negative ? -t : t;
        while (true) {
            if (accept("+")) r += term();
            else if (accept("-")) r -= term();
            else break;
        }
        return r;
    }

    Unit unit_product() {
        Unit u = unit_factor();
        while (true) {
            if (accept("*")) u = unit_mul(u, unit_factor());
            else if (starts_unit()) u = unit_mul(u, unit_factor());
            else break;
        }
        return u;
    }

    IndexSet monomial() {
        IndexSet s;
        if (peek().kind == Token::Number && peek().text == "1") {
            next();
            return s;
        }
        do {
            const Token& t = expect(Token::Ident, "wedge factor Y<i>");
            if (t.text.size() < 2 || t.text[0] != 'Y') throw ParseError("expected Y<i>", t.pos);
            int i = index_of(t.text.substr(1), t.pos);
            if (!s.empty() && i <= s.back()) throw ParseError("wedge indices must increase", t.pos);
            s.push_back(i);
        } while (accept("^"));
        return s;
    }

    void finish() {
        if (peek().kind != Token::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    }

private:
    const Token& peek() const { return toks_[k_]; }
    const Token& next() { return toks_[k_ < toks_.size() - 1 ? k_++ : k_]; }
    bool is(const char* sym) const { return peek().kind == Token::Symbol && peek().text == sym; }
    bool accept(const char* sym) {
        if (!is(sym)) return false;
        ++k_;
        return true;
    }
    void expect_symbol(const char* sym) {
        if (!accept(sym))
            throw ParseError(std::string("expected '") + sym + "'" +
                                 (peek().kind == Token::End ? " before end of input" : ""),
                             peek().pos);
    }
    const Token& expect(Token::Kind k, const char* what) {
        if (peek().kind != k) throw ParseError(std::string("expected ") + what, peek().pos);
        return next();
    }

    bool starts_unit() const {
        return is("(") || (peek().kind == Token::Ident && peek().text == "u");
    }
    bool starts_factor() const {
        if (is("(") || is("[") || is("<")) return true;
        if (peek().kind != Token::Ident) return false;
        return peek().text == "u" || peek().text == "eta" || peek().text == "eps";
    }

    long integer() {
        bool negative = accept("-");
        const Token& t = expect(Token::Number, "integer");
        if (t.text.find('/') != std::string::npos) throw ParseError("expected an integer", t.pos);
        long v = 0;
        for (char c : t.text) {
            if (__builtin_mul_overflow(v, 10L, &v) || __builtin_add_overflow(v, c - '0', &v))
                throw ParseError("integer too large", t.pos);
        }
        return negative ? -v : v;
    }

    Scalar scalar() {
        bool negative = accept("-");
        const Token& t = expect(Token::Number, "scalar");
        Scalar s = Scalar::parse(field_, t.text);
        return negative ? -s : s;
    }

    int index_of(const std::string& digits, std::size_t pos) {
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
            throw ParseError("bad index", pos);
        long i = std::stol(digits);
        std::size_t n = arr_ ? arr_->size() : 0;
        if (i < 1 || static_cast<std::size_t>(i) > n)
            throw ParseError("hyperplane index " + digits + " out of range", pos);
        return static_cast<int>(i - 1);
    }

    PresElement term() {
        PresElement r = factor();
        while (true) {
            if (accept("*")) r = r * factor();
            else if (starts_factor()) r = r * factor();
            else break;
        }
        return r;
    }

    PresElement factor() {
        const Token& t = peek();
        if (t.kind == Token::Number) {
            return PresElement::coefficient(MWElement::integer(field_, integer()));
        }
        if (accept("[")) {
            Scalar a = scalar();
            expect_symbol("]");
            if (a.is_zero()) throw ParseError("[0] is undefined", t.pos);
            return PresElement::coefficient(MWElement::symbol(a));
        }
        if (accept("<")) {
            Scalar a = scalar();
            expect_symbol(">");
            if (a.is_zero()) throw ParseError("<0> is undefined", t.pos);
            return PresElement::coefficient(MWElement::bracket_form(a));
        }
        if (t.kind == Token::Ident && (t.text == "eta" || t.text == "eps")) {
            bool eta = t.text == "eta";
            next();
            long n = 1;
            if (accept("^")) n = integer();
            if (n < 0) throw ParseError("negative power", t.pos);
            MWElement base = eta ? MWElement::eta(field_) : MWElement::epsilon(field_);
            MWElement c = MWElement::one(field_);
            for (long i = 0; i < n; ++i) c = c * base;
            return PresElement::coefficient(c);
        }
        if (starts_unit()) return PresElement::generator(unit_factor());
        if (t.kind == Token::End) throw ParseError("unexpected end of input", t.pos);
        throw ParseError("unexpected '" + t.text + "'", t.pos);
    }

    Unit power(Unit u) {
        if (!accept("^")) return u;
        long n = integer();
        Unit r{u.lambda.pow(n), {}};
        for (auto [i, e] : u.exponents) r.exponents[i] = e * n;
        if (n == 0) r.exponents.clear();
        return r;
    }

    Unit unit_factor() {
        const Token& t = peek();
        if (t.kind == Token::Number || is("-")) {
            Scalar s = scalar();
            if (s.is_zero()) throw ParseError("zero is not a unit", t.pos);
            return Unit::constant(s);
        }
        if (t.kind == Token::Ident && t.text == "u") {
            next();
            expect_symbol("(");
            Scalar lambda = scalar();
            if (lambda.is_zero()) throw ParseError("zero is not a unit", t.pos);
            Unit u{lambda, {}};
            if (accept(";") && !is(")")) {
                do {
                    const Token& it = expect(Token::Number, "hyperplane index");
                    int i = index_of(it.text, it.pos);
                    long e = 1;
                    if (accept("^")) e = integer();
                    u = unit_mul(u, Unit::hyperplane(field_, i, e));
                } while (accept("*"));
            }
            expect_symbol(")");
            return power(u);
        }
        if (accept("(")) return power(form(t.pos));
        throw ParseError("expected a unit", t.pos);
    }

    Unit form(std::size_t open) {
        std::size_t dim = arr_ ? arr_->dim() : 0;
        Row raw(dim + 1, Scalar::zero(field_));
        bool first = true;
        while (!is(")")) {
            if (peek().kind == Token::End) throw ParseError("unclosed '('", open);
            bool negative = false;
            if (accept("-")) negative = true;
            else if (!first) expect_symbol("+");
            else accept("+");
            if (!first && !negative && accept("-")) negative = true;
            first = false;
            Scalar coef = Scalar::one(field_);
            bool have_coef = false;
            if (peek().kind == Token::Number) {
                coef = Scalar::parse(field_, next().text);
                have_coef = true;
                if (!accept("*") && !(peek().kind == Token::Ident)) {
                    raw[0] += negative ? -coef : coef;
                    continue;
                }
            }
            const Token& v = expect(Token::Ident, have_coef ? "variable after '*'" : "variable or number");
            if (v.text.size() < 2 || v.text[0] != 'x') throw ParseError("unknown variable '" + v.text + "'", v.pos);
            std::string digits = v.text.substr(1);
            if (!std::all_of(digits.begin(), digits.end(), ::isdigit)) throw ParseError("bad variable", v.pos);
            long k = std::stol(digits);
            if (k < 1 || static_cast<std::size_t>(k) > dim)
                throw ParseError("variable " + v.text + " out of range in form (" + form_text(open) + ")", v.pos);
            raw[static_cast<std::size_t>(k)] += negative ? -coef : coef;
        }
        std::size_t close = peek().pos;
        expect_symbol(")");
        std::string text(text_.substr(open + 1, close - open - 1));
        bool linear = false;
        for (std::size_t i = 1; i < raw.size(); ++i)
            if (!raw[i].is_zero()) linear = true;
        if (!linear) {
            if (raw[0].is_zero()) throw ParseError("form (" + text + ") is zero", open);
            return Unit::constant(raw[0]);
        }
        auto [h, s] = Hyperplane::normalize(raw);
        auto idx = arr_ ? arr_->find(h) : std::nullopt;
        if (!idx) throw ParseError("form (" + text + ") is not a hyperplane of the arrangement", open);
        return Unit{s, {{*idx, 1}}};
    }

    std::string form_text(std::size_t open) const {
        auto close = text_.find(')', open);
        return std::string(text_.substr(open + 1, close == std::string_view::npos ? std::string_view::npos
                                                                                   : close - open - 1));
    }

    std::string_view text_;
    std::vector<Token> toks_;
    std::size_t k_ = 0;
    Field field_;
    const Arrangement* arr_;
};

struct Piece {
    bool negative;
    std::string text;
};

// Splits c * word into signed monomial terms.
std::vector<Piece> term_pieces(const MWElement& c, const std::string& word) {
    std::vector<Piece> out;
    for (const auto& [m, k] : c.terms()) {
        std::vector<std::string> parts;
        long a = k < 0 ? -k : k;
        if (a != 1) parts.push_back(std::to_string(a));
        if (m.eta == 1) parts.push_back("eta");
        else if (m.eta > 1) parts.push_back("eta^" + std::to_string(m.eta));
        for (const auto& s : m.symbols) parts.push_back("[" + s.to_string() + "]");
        std::string coef;
        for (std::size_t i = 0; i < parts.size(); ++i) coef += (i ? "*" : "") + parts[i];
        std::string text = coef.empty() ? (word.empty() ? "1" : word) : (word.empty() ? coef : coef + "·" + word);
        out.push_back({k < 0, text});
    }
    return out;
}

std::string join_pieces(const std::vector<Piece>& ps) {
    if (ps.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (i == 0) out += ps[i].negative ? "-" : "";
        else out += ps[i].negative ? " - " : " + ";
        out += ps[i].text;
    }
    return out;
}

} // namespace

PresElement parse_element(std::string_view text, const Arrangement& a) {
    Parser p(text, a.field(), &a);
    PresElement r = p.element();
    p.finish();
    return r;
}

MWElement parse_mw(std::string_view text, const Field& f) {
    Parser p(text, f, nullptr);
    PresElement r = p.element();
    p.finish();
    MWElement out(f);
    for (const auto& [w, c] : r.terms()) {
        if (!w.empty()) throw ParseError("generators are not allowed in a coefficient", 0);
        out += c;
    }
    return out;
}

Unit parse_unit(std::string_view text, const Arrangement& a) {
    Parser p(text, a.field(), &a);
    Unit u = p.unit_product();
    p.finish();
    return u;
}

IndexSet parse_monomial(std::string_view text, const Arrangement& a) {
    Parser p(text, a.field(), &a);
    IndexSet s = p.monomial();
    p.finish();
    return s;
}

std::string format_unit(const Unit& u, const Arrangement& a) {
    if (u.lambda.is_one() && u.exponents.size() == 1) {
        auto [i, n] = *u.exponents.begin();
        std::string s = "(" + a[static_cast<std::size_t>(i)].to_string() + ")";
        return n == 1 ? s : s + "^" + std::to_string(n);
    }
    std::string s = "u(" + u.lambda.to_string();
    if (!u.exponents.empty()) {
        s += "; ";
        bool first = true;
        for (auto [i, n] : u.exponents) {
            s += (first ? "" : "*") + std::to_string(i + 1);
            if (n != 1) s += "^" + std::to_string(n);
            first = false;
        }
    }
    return s + ")";
}

std::string format_element(const PresElement& x, const Arrangement& a) {
    std::vector<Piece> pieces;
    for (const auto& [w, c] : x.terms()) {
        std::string word;
        for (const auto& u : w) word += format_unit(u, a);
        auto ps = term_pieces(c, word);
        pieces.insert(pieces.end(), ps.begin(), ps.end());
    }
    return join_pieces(pieces);
}

std::string format_basis_word(const IndexSet& s, const Arrangement& a) {
    if (s.empty()) return "1";
    std::string out;
    for (int i : s) out += "(" + a[static_cast<std::size_t>(i)].to_string() + ")";
    return out;
}

std::string format_nf(const NormalForm& x, const Arrangement& a) {
    std::vector<IndexSet> keys;
    for (const auto& [s, c] : x) keys.push_back(s);
    std::sort(keys.begin(), keys.end(), [](const IndexSet& p, const IndexSet& q) {
        return p.size() != q.size() ? p.size() < q.size() : p < q;
    });
    std::vector<Piece> pieces;
    for (const auto& s : keys) {
        auto ps = term_pieces(x.at(s), s.empty() ? "" : format_basis_word(s, a));
        pieces.insert(pieces.end(), ps.begin(), ps.end());
    }
    return join_pieces(pieces);
}

std::string format_monomial(const IndexSet& s) { return ExtElement::monomial(s).to_string(); }

} // namespace hypermw
