#pragma once

#include <random>
#include <vector>

#include "algb/free_element.hpp"
#include "algb/poly.hpp"

namespace algb::test {

inline Poly pp(const char* text, const RingPtr& ring) { return Poly::parse(text, ring); }

inline FreeElement fe(const RingPtr& ring, std::initializer_list<const char*> comps) {
    std::vector<Poly> v;
    for (auto c : comps) v.push_back(Poly::parse(c, ring));
    return FreeElement(std::move(v));
}

// Deterministic random polynomials for the property suites.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

    Rational rational(int max_abs = 5) {
        int num = uniform(-max_abs, max_abs);
        int den = uniform(1, 3);
        return Rational(num, den);
    }

    Poly poly(const RingPtr& ring, unsigned max_degree, int max_terms = 4, int max_abs = 5) {
        Poly out(ring);
        int terms = uniform(1, max_terms);
        for (int t = 0; t < terms; ++t) {
            Exponents e(ring->nvars(), 0);
            unsigned budget = max_degree == 0 ? 0 : static_cast<unsigned>(uniform(0, static_cast<int>(max_degree)));
            for (std::size_t i = 0; i < ring->nvars() && budget > 0; ++i) {
                unsigned d = static_cast<unsigned>(uniform(0, static_cast<int>(budget)));
                e[i] = d;
                budget -= d;
            }
            out.add_term(e, rational(max_abs));
        }
        return out;
    }

    FreeElement element(const RingPtr& ring, std::size_t rank, unsigned max_degree) {
        FreeElement out(ring, rank);
        for (std::size_t i = 0; i < rank; ++i) out[i] = poly(ring, max_degree);
        return out;
    }

    std::mt19937_64& raw() { return gen_; }

private:
    std::mt19937_64 gen_;
};

}  // namespace algb::test
