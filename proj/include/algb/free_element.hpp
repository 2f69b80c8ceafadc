#pragma once

#include <string>
#include <vector>

#include "algb/poly.hpp"

namespace algb {

// Element of a free module O^r: a fixed-length tuple of polynomials. Rank 0
// (the zero module over a point or an empty tangent space) is allowed.
struct FreeElement {
    RingPtr ring;
    std::vector<Poly> components;

    FreeElement(RingPtr r, std::size_t rank) : ring(std::move(r)), components(rank, Poly(ring)) {}
    explicit FreeElement(std::vector<Poly> comps);

    std::size_t rank() const { return components.size(); }
    bool is_zero() const;
    const Poly& operator[](std::size_t i) const { return components[i]; }
    Poly& operator[](std::size_t i) { return components[i]; }

    FreeElement operator-() const;
    FreeElement& operator+=(const FreeElement& o);
    FreeElement& operator-=(const FreeElement& o);
    friend FreeElement operator+(FreeElement a, const FreeElement& b) { return a += b; }
    friend FreeElement operator-(FreeElement a, const FreeElement& b) { return a -= b; }
    FreeElement scaled(const Poly& p) const;

    friend bool operator==(const FreeElement& a, const FreeElement& b) {
        return a.components == b.components;
    }

    static FreeElement unit(const RingPtr& ring, std::size_t rank, std::size_t i);
    std::string str() const;
};

FreeElement apply_ring_map(const RingMap& f, const FreeElement& e);

// Classical Lie bracket of vector fields, [v, w]_k = sum_l v_l d(w_k)/dx_l - w_l d(v_k)/dx_l.
// Both fields live in the tangent free module O^n of their ring.
FreeElement lie_bracket_fields(const FreeElement& v, const FreeElement& w);

// Directional derivative v(g) of a ring element along a tangent vector.
Poly field_apply(const FreeElement& v, const Poly& g);

}  // namespace algb
