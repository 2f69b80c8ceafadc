#pragma once

#include <string>
#include <vector>

#include "algb/poly.hpp"

namespace algb {

// Coordinate projection X = Y x S -> S of affine models: the total ring's
// variables split into fiber variables (coordinates on Y) and base variables
// (coordinates on S). The relative tangent module T_{X|S} is the free span of
// the fiber partials.
struct SmoothProjection {
    RingPtr total;
    std::vector<std::size_t> fiber;  // indices into total->vars()
    std::vector<std::size_t> base;

    static SmoothProjection make(RingPtr total, const std::vector<std::string>& fiber_vars,
                                 const std::vector<std::string>& base_vars);

    std::size_t nfiber() const { return fiber.size(); }
    std::size_t nbase() const { return base.size(); }
    bool is_base_index(std::size_t var) const;
    RingPtr fiber_ring() const;
    RingPtr base_ring() const;
    std::vector<std::string> fiber_names() const;
    std::vector<std::string> base_names() const;
};

}  // namespace algb
