#pragma once

#include "algb/algebroid.hpp"
#include "algb/projection.hpp"

namespace algb {

// Differential operator of order <= 1 on a presented module, encoded by its
// action on generators plus a symbol field:
//   psi(sum g_i e_i) = sum g_i * endo(e_i) + symbol(g_i) * e_i.
// The defining identity psi o m_f - m_f o psi = m_{symbol(f)} holds by
// construction of this encoding; well-definedness modulo relations is a
// checkable property, not an assumption.
struct DiffOp1 {
    PresentedModule module;
    PolyMatrix endo;      // ngens x ngens, row i = psi(e_i)
    FreeElement symbol;   // tangent field, rank = nvars

    std::size_t ngens() const { return module.ngens(); }
};

DiffOp1 make_diffop(PresentedModule module, PolyMatrix endo, FreeElement symbol);
DiffOp1 zero_diffop(const PresentedModule& module);

FreeElement apply_diffop(const DiffOp1& op, const FreeElement& coeffs,
                         const SubmoduleBasis* rels = nullptr);

// Operator maps every relation row to zero modulo the relations.
bool diffop_well_defined(const DiffOp1& op);

DiffOp1 commutator(const DiffOp1& a, const DiffOp1& b);

// Inner operator ad_alpha = {alpha, -} of an algebroid; a Lie-derivation and a
// differential operator of order <= 1 with symbol a(alpha).
DiffOp1 ad_operator(const Algebroid& a, const FreeElement& alpha);

// psi({u,v}) = {psi u, v} + {u, psi v}, checked on generator pairs and on
// products g*e_i for monomials g up to the degree bound. Bilinearity plus the
// operator identity reduce the general statement at fixed degree to these
// finitely many instances.
bool is_lie_derivation(const DiffOp1& op, const Algebroid& a, unsigned degree_bound);

// Witness "(g, e_i, e_j)" of a failed derivation identity, if any.
std::optional<std::string> lie_derivation_witness(const DiffOp1& op, const Algebroid& a,
                                                  unsigned degree_bound);

// Operator pullback along f (rings: f maps functions on X to functions on Y):
// substituted endomorphism with the prescribed compatible symbol, which must
// satisfy Df(compat) = f*(symbol of op).
DiffOp1 pullback_diffop(const DiffOp1& op, const RingMap& f, const FreeElement& compat,
                        const PresentedModule& pulled_module);

// Jacobian action Df(v) of a field on Y, as a vector over the x-partials.
FreeElement jacobian_image(const RingMap& f, const FreeElement& v);

struct PullbackIsoReport {
    bool hypothesis_ok = false;
    bool injective = false;
    bool surjective = false;
    unsigned degree_bound = 0;
    std::string detail;
    bool ok() const { return hypothesis_ok && injective && surjective; }
};

// Degree-bounded verification that the canonical map from the pulled-back
// operator algebroid to the operators on the pulled-back module is bijective.
// Supported base changes: the identity, and point evaluations (constant
// images); these are the shapes with an exact degree-window model. The
// hypothesis gate checks that the non-locally-free locus has (relative)
// codimension >= 2.
PullbackIsoReport diffop_pullback_iso_check(const PresentedModule& f_module,
                                            const SmoothProjection* proj, const RingMap& base_map,
                                            unsigned degree_bound);

// Rational basis of {Y in T_X, coefficients of degree <= bound, [Y, v] in <v>}.
// With `relative`, Y is constrained to the relative tangent T_{X|S}. The span
// always contains v when deg(v) <= bound.
std::vector<FreeElement> symmetry_fields(const FreeElement& v, unsigned degree_bound,
                                         const SmoothProjection* relative = nullptr);

}  // namespace algb
