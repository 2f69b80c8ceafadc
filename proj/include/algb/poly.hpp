#pragma once

#include <map>
#include <string>
#include <vector>

#include "algb/rational.hpp"
#include "algb/ring.hpp"

namespace algb {

// Exponent vector; one entry per ring variable, in ring order.
using Exponents = std::vector<unsigned>;

unsigned total_degree(const Exponents& e);

// All exponent vectors of total degree <= d, graded then lexicographic.
std::vector<Exponents> exponents_up_to(std::size_t nvars, unsigned d);

// Multivariate polynomial with exact rational coefficients. Storage is a
// structural map (no zero coefficients), so equality is term-by-term and
// independent of any monomial order; orders only matter for printing and
// for the rewriting engine.
class Poly {
public:
    using Terms = std::map<Exponents, Rational>;

    explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}
    static Poly constant(RingPtr ring, Rational c);
    static Poly variable(const RingPtr& ring, std::size_t index);
    static Poly monomial(RingPtr ring, Exponents e, Rational c);

    // Parser for the expression grammar:
    //   expr := ('+'|'-')? term (('+'|'-') term)*
    //   term := factor ('*' factor)*
    //   factor := base ('^' uint)?
    //   base := rational | var | '(' expr ')'
    // Whitespace is insignificant. Throws ParseError / unknown-variable Error.
    static Poly parse(std::string_view text, const RingPtr& ring);

    const RingPtr& ring() const { return ring_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Nonzero constant coefficient, if the polynomial is a constant (0 -> 0).
    Rational constant_value() const;
    // -1 for the zero polynomial.
    int degree() const;

    Rational coeff(const Exponents& e) const;
    void add_term(const Exponents& e, const Rational& c);

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly scaled(const Rational& c) const;
    Poly pow(unsigned n) const;

    Poly derivative(std::size_t var) const;

    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Canonical text form: terms in graded-lex descending order. parse(str())
    // is the identity.
    std::string str() const;

private:
    void check_same_ring(const Poly& o, const char* op) const;
    RingPtr ring_;
    Terms terms_;
};

// Ring morphism by substitution: one image polynomial per source variable.
// Geometrically this is a morphism of affine models Spec(target) -> Spec(source).
struct RingMap {
    RingPtr source;
    RingPtr target;
    std::vector<Poly> images;

    static RingMap make(RingPtr source, RingPtr target, std::vector<Poly> images);
    static RingMap identity(const RingPtr& ring);
    static RingMap compose(const RingMap& first, const RingMap& then);
};

Poly apply_ring_map(const RingMap& f, const Poly& p);

std::ostream& operator<<(std::ostream& os, const Poly& p);

}  // namespace algb
