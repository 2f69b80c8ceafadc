#include "algb/poly.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <set>
#include <sstream>

namespace algb {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool valid_identifier(const std::string& s) {
    if (s.empty() || !is_ident_start(s[0])) return false;
    return std::all_of(s.begin(), s.end(), is_ident_char);
}

// Graded-lex comparison used for printing only: higher total degree first,
// ties broken by earlier variables carrying larger exponents.
bool grlex_greater(const Exponents& a, const Exponents& b) {
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
}

}  // namespace

unsigned total_degree(const Exponents& e) {
    unsigned d = 0;
    for (unsigned x : e) d += x;
    return d;
}

namespace {
void exponents_of_degree(std::size_t nvars, unsigned d, std::size_t var, Exponents& cur,
                         std::vector<Exponents>& out) {
    if (var + 1 == nvars) {
        cur[var] = d;
        out.push_back(cur);
        return;
    }
    for (unsigned e = d + 1; e-- > 0;) {
        cur[var] = e;
        exponents_of_degree(nvars, d - e, var + 1, cur, out);
    }
    cur[var] = 0;
}
}  // namespace

std::vector<Exponents> exponents_up_to(std::size_t nvars, unsigned d) {
    std::vector<Exponents> out;
    if (nvars == 0) {
        out.push_back(Exponents{});
        return out;
    }
    Exponents cur(nvars, 0);
    for (unsigned deg = 0; deg <= d; ++deg) exponents_of_degree(nvars, deg, 0, cur, out);
    return out;
}

RingPtr Ring::make(std::vector<std::string> vars) {
    std::set<std::string> seen;
    for (const auto& v : vars) {
        if (!valid_identifier(v)) throw Error("bad-ring", "invalid variable name '" + v + "'");
        if (!seen.insert(v).second) throw Error("bad-ring", "duplicate variable name '" + v + "'");
    }
    return std::shared_ptr<const Ring>(new Ring(std::move(vars)));
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return i;
    return std::nullopt;
}

Poly Poly::constant(RingPtr ring, Rational c) {
    Poly p(std::move(ring));
    if (!c.is_zero()) p.terms_.emplace(Exponents(p.ring_->nvars(), 0), std::move(c));
    return p;
}

Poly Poly::variable(const RingPtr& ring, std::size_t index) {
    Exponents e(ring->nvars(), 0);
    e.at(index) = 1;
    return monomial(ring, std::move(e), Rational(1));
}

Poly Poly::monomial(RingPtr ring, Exponents e, Rational c) {
    Poly p(std::move(ring));
    if (e.size() != p.ring_->nvars()) throw Error("bad-monomial", "exponent vector length mismatch");
    if (!c.is_zero()) p.terms_.emplace(std::move(e), std::move(c));
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && total_degree(terms_.begin()->first) == 0;
}

Rational Poly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw Error("not-constant", "polynomial is not constant");
    return terms_.begin()->second;
}

int Poly::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(total_degree(e)));
    return d;
}

Rational Poly::coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Exponents& e, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void Poly::check_same_ring(const Poly& o, const char* op) const {
    if (!same_ring(ring_, o.ring_)) throw ring_mismatch(op);
}

Poly Poly::operator-() const {
    Poly r(ring_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    check_same_ring(o, "poly addition");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    check_same_ring(o, "poly subtraction");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    a.check_same_ring(b, "poly multiplication");
    Poly r(a.ring_);
    Exponents e(a.ring_->nvars());
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Poly Poly::scaled(const Rational& c) const {
    Poly r(ring_);
    if (c.is_zero()) return r;
    for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
    return r;
}

Poly Poly::pow(unsigned n) const {
    Poly r = constant(ring_, Rational(1));
    for (unsigned i = 0; i < n; ++i) r *= *this;
    return r;
}

Poly Poly::derivative(std::size_t var) const {
    if (var >= ring_->nvars()) throw Error("unknown-variable", "derivative variable index out of range");
    Poly r(ring_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponents d = e;
        d[var] -= 1;
        r.add_term(d, c * Rational(static_cast<long>(e[var])));
    }
    return r;
}

bool operator==(const Poly& a, const Poly& b) {
    return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::vector<const Terms::value_type*> sorted;
    sorted.reserve(terms_.size());
    for (const auto& t : terms_) sorted.push_back(&t);
    std::sort(sorted.begin(), sorted.end(),
              [](const auto* a, const auto* b) { return grlex_greater(a->first, b->first); });

    std::ostringstream os;
    bool first = true;
    for (const auto* t : sorted) {
        const auto& [e, c] = *t;
        Rational a = c.abs();
        if (first) {
            if (c.sign() < 0) os << "-";
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        bool has_vars = total_degree(e) > 0;
        bool coeff_shown = !a.is_one() || !has_vars;
        if (coeff_shown) os << a.str();
        bool need_star = coeff_shown;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (need_star) os << "*";
            os << ring_->var(i);
            if (e[i] > 1) os << "^" << e[i];
            need_star = true;
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
    Parser(std::string_view text, const RingPtr& ring) : text_(text), ring_(ring) {}

    Poly run() {
        Poly p = expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError(pos_, "trailing input");
        return p;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Poly expr() {
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        Poly p = term();
        if (neg) p = -p;
        for (;;) {
            if (eat('+'))
                p += term();
            else if (eat('-'))
                p -= term();
            else
                break;
        }
        return p;
    }

    Poly term() {
        Poly p = factor();
        while (eat('*')) p *= factor();
        return p;
    }

    Poly factor() {
        Poly b = base();
        if (eat('^')) return b.pow(uint_literal());
        return b;
    }

    Poly base() {
        char c = peek();
        if (c == '(') {
            eat('(');
            Poly p = expr();
            if (!eat(')')) throw ParseError(pos_, "expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return rational_literal();
        if (is_ident_start(c)) return variable();
        throw ParseError(pos_, "expected a rational, a variable, or '('");
    }

    unsigned uint_literal() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) throw ParseError(pos_, "expected an unsigned integer");
        unsigned long v = 0;
        for (std::size_t i = start; i < pos_; ++i) {
            v = v * 10 + static_cast<unsigned long>(text_[i] - '0');
            if (v > 1000000) throw ParseError(start, "exponent too large");
        }
        return static_cast<unsigned>(v);
    }

    Poly rational_literal() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        std::string num(text_.substr(start, pos_ - start));
        std::string den = "1";
        // '/' binds to the literal only when followed by digits ("3/2"), which
        // is the only slash the grammar admits anyway.
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            std::size_t dstart = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (pos_ == dstart) throw ParseError(pos_, "expected denominator digits");
            den.assign(text_.substr(dstart, pos_ - dstart));
        }
        return Poly::constant(ring_, Rational::parse(num + "/" + den));
    }

    Poly variable() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        auto idx = ring_->index_of(name);
        if (!idx) throw Error("unknown-variable", "unknown variable '" + name + "'");
        return Poly::variable(ring_, *idx);
    }

    std::string_view text_;
    const RingPtr& ring_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly Poly::parse(std::string_view text, const RingPtr& ring) {
    return Parser(text, ring).run();
}

// ---------------------------------------------------------------------------
// Ring maps

RingMap RingMap::make(RingPtr source, RingPtr target, std::vector<Poly> images) {
    if (images.size() != source->nvars())
        throw Error("bad-ring-map", "ring map needs one image per source variable");
    for (const auto& p : images)
        if (!same_ring(p.ring(), target)) throw ring_mismatch("ring map image");
    return RingMap{std::move(source), std::move(target), std::move(images)};
}

RingMap RingMap::identity(const RingPtr& ring) {
    std::vector<Poly> images;
    for (std::size_t i = 0; i < ring->nvars(); ++i) images.push_back(Poly::variable(ring, i));
    return RingMap{ring, ring, std::move(images)};
}

RingMap RingMap::compose(const RingMap& first, const RingMap& then) {
    // Varieties: Spec(then.target) -> Spec(first.source). Rings: substitute
    // `then` into the images of `first`.
    if (!same_ring(first.target, then.source)) throw ring_mismatch("ring map composition");
    std::vector<Poly> images;
    images.reserve(first.images.size());
    for (const auto& p : first.images) images.push_back(apply_ring_map(then, p));
    return RingMap{first.source, then.target, std::move(images)};
}

Poly apply_ring_map(const RingMap& f, const Poly& p) {
    if (!same_ring(p.ring(), f.source)) throw ring_mismatch("apply_ring_map");
    Poly r(f.target);
    for (const auto& [e, c] : p.terms()) {
        Poly m = Poly::constant(f.target, c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) m *= f.images[i].pow(e[i]);
        r += m;
    }
    return r;
}

}  // namespace algb
