#pragma once

#include <optional>
#include <vector>

#include "algb/groebner.hpp"

namespace algb {

// Finitely presented module, realized inside an ambient free module.
// `generators` are ambient vectors; `relations` rows are coefficient vectors
// on the generators. For modules built as honest submodules the relation rows
// are true syzygies of the generator vectors; quotient-style presentations
// (cokernels) reuse the target's ambient vectors for bookkeeping, and all
// presentation-level questions go through the relation rows only.
struct PresentedModule {
    RingPtr ring;
    std::size_t ambient_rank = 0;
    std::vector<FreeElement> generators;
    PolyMatrix relations;

    static PresentedModule free_module(const RingPtr& ring, std::size_t rank);
    static PresentedModule zero_module(const RingPtr& ring, std::size_t ambient_rank);
    // Submodule spanned by `gens`; relations are computed syzygies.
    static PresentedModule submodule(const RingPtr& ring, std::size_t ambient_rank,
                                     std::vector<FreeElement> gens,
                                     const MonomialOrder& order = MonomialOrder::grevlex_top());

    std::size_t ngens() const { return generators.size(); }
    // Ambient vector of a coefficient combination of generators.
    FreeElement realize(const std::vector<Poly>& coeffs) const;
    FreeElement realize(const FreeElement& coeffs) const;

    // Rank over the fraction field: #generators - rank(relations).
    std::size_t generic_rank() const;
    bool is_zero(const MonomialOrder& order = MonomialOrder::grevlex_top()) const;
};

// Groebner basis of the relation rows, living in the generator-coordinate
// free module O^ngens. Decides which coefficient vectors are zero in the module.
SubmoduleBasis relation_basis(const PresentedModule& m,
                              const MonomialOrder& order = MonomialOrder::grevlex_top());

// Map sending generator i of the source to the combination matrix[i] of
// target generators.
struct ModuleMap {
    PresentedModule source;
    PresentedModule target;
    PolyMatrix matrix;  // ngens(source) x ngens(target)

    static ModuleMap make(PresentedModule source, PresentedModule target, PolyMatrix matrix);
    static ModuleMap identity(const PresentedModule& m);
    bool is_well_defined(const MonomialOrder& order = MonomialOrder::grevlex_top()) const;
    void require_well_defined(const MonomialOrder& order = MonomialOrder::grevlex_top()) const;
};

// A submodule of `of`, together with the coefficient rows expressing its
// generators in the generators of `of`.
struct SubmoduleWithInclusion {
    PresentedModule module;
    PolyMatrix inclusion;  // ngens(module) x ngens(of)
};

SubmoduleWithInclusion kernel_of_map(const ModuleMap& f,
                                     const MonomialOrder& order = MonomialOrder::grevlex_top());

// Preimage f^{-1}(N) for N a submodule of the target's ambient free module
// (the target must be presented as an honest submodule).
SubmoduleWithInclusion preimage_submodule(const ModuleMap& f, const PresentedModule& n,
                                          const MonomialOrder& order = MonomialOrder::grevlex_top());

struct FiberedProduct {
    PresentedModule module;
    PolyMatrix to_left;   // coefficients on the left source's generators
    PolyMatrix to_right;  // coefficients on the right source's generators
};

// Kernel of (g, -h) : M + N -> P, with the two projections.
FiberedProduct fibered_product(const ModuleMap& g, const ModuleMap& h,
                               const MonomialOrder& order = MonomialOrder::grevlex_top());

PresentedModule cokernel(const ModuleMap& f);

struct Ideal {
    RingPtr ring;
    std::vector<Poly> generators;
};

// Ideal of (ngens - k)-minors of the relation matrix; empty-minor convention
// gives the unit ideal once ngens - k <= 0.
Ideal fitting_ideal(const PresentedModule& m, std::size_t k);

bool is_isomorphism(const ModuleMap& f, const MonomialOrder& order = MonomialOrder::grevlex_top());

// Drops generators that reduce to zero modulo the relations; the zero module
// comes out with an empty generator list.
PresentedModule normalized(const PresentedModule& m,
                           const MonomialOrder& order = MonomialOrder::grevlex_top());

std::vector<Poly> ideal_groebner(const Ideal& ideal,
                                 const MonomialOrder& order = MonomialOrder::grevlex_top());
bool ideal_contains(const Ideal& ideal, const Poly& p,
                    const MonomialOrder& order = MonomialOrder::grevlex_top());
bool ideals_equal(const Ideal& a, const Ideal& b,
                  const MonomialOrder& order = MonomialOrder::grevlex_top());
bool is_unit_ideal(const Ideal& ideal, const MonomialOrder& order = MonomialOrder::grevlex_top());

// Krull dimension via independent variable sets modulo the leading-term ideal;
// -1 for the unit ideal, nvars for the zero ideal.
int ideal_dimension(const Ideal& ideal, const MonomialOrder& order = MonomialOrder::grevlex_top());

}  // namespace algb
