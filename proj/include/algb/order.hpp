#pragma once

#include <cstddef>
#include <vector>

#include "algb/poly.hpp"

namespace algb {

enum class OrderKind { Lex, Grevlex };
enum class ModuleExt { PositionOverTerm, TermOverPosition };

// Total order on module monomials x^e * e_comp, compatible with multiplication.
// position_priority permutes component precedence; empty means identity
// (component 0 ranks highest).
struct MonomialOrder {
    OrderKind kind = OrderKind::Grevlex;
    ModuleExt ext = ModuleExt::TermOverPosition;
    std::vector<std::size_t> position_priority;

    static MonomialOrder grevlex_top() { return {}; }
    static MonomialOrder lex_pot() { return {OrderKind::Lex, ModuleExt::PositionOverTerm, {}}; }

    // +1 if a > b, 0 if equal, -1 if a < b.
    int compare_expo(const Exponents& a, const Exponents& b) const;
    int compare_position(std::size_t ca, std::size_t cb) const;
    int compare(const Exponents& ea, std::size_t ca, const Exponents& eb, std::size_t cb) const;
};

}  // namespace algb
