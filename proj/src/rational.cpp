#include "algb/rational.hpp"

#include <ostream>

#include "algb/error.hpp"

namespace algb {

Rational::Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw Error("division-by-zero", "rational with zero denominator");
    v_.canonicalize();
}

Rational Rational::parse(std::string_view s) {
    if (s.empty()) throw Error("parse", "empty rational literal");
    try {
        mpq_class v(std::string(s), 10);
        if (v.get_den() == 0) throw Error("division-by-zero", "rational with zero denominator");
        v.canonicalize();
        return Rational(std::move(v));
    } catch (const std::invalid_argument&) {
        throw Error("parse", "bad rational literal '" + std::string(s) + "'");
    }
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw Error("division-by-zero", "rational division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::inverse() const {
    if (is_zero()) throw Error("division-by-zero", "inverse of zero");
    return Rational(mpq_class(1) / v_);
}

std::string Rational::str() const {
    return v_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

}  // namespace algb
