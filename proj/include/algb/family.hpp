#pragma once

#include "algb/diffop.hpp"
#include "algb/projection.hpp"

namespace algb {

// Algebroid whose anchor lands in the relative tangent module of a coordinate
// projection; the bracket is then linear over functions of the base variables.
struct FamilyAlgebroid {
    SmoothProjection proj;
    Algebroid alg;
};

// Checks the relative-anchor condition (zero base-partial columns).
FamilyAlgebroid make_family(SmoothProjection proj, Algebroid alg);

// Relative-anchor condition plus the algebroid axioms.
ValidationReport validate_family(const FamilyAlgebroid& fam);

// Carrier = fibered product of f*A -> f*T_X <- T_Y, anchor = projection to
// T_Y, bracket = restriction of the direct-sum bracket, expressed through the
// fibered-product generators by Groebner lifting.
Algebroid pullback_algebroid(const Algebroid& a, const RingMap& f);

// f maps functions on the base S to functions on a new base R; the family is
// transported to Y x R by substitution in all presentation data.
FamilyAlgebroid base_change_family(const FamilyAlgebroid& fam, const RingMap& f);

struct InducedFamily {
    FamilyAlgebroid family;
    PolyMatrix inclusion;  // family generators as coefficient rows on a's generators
};

// Family carrier = preimage of the relative tangent module under the anchor,
// with anchor and bracket restricted.
InducedFamily induced_family(const Algebroid& a, const SmoothProjection& proj);

// Rows express fam's generators in a's generators; inferred by ambient lift
// when both carriers share an ambient. Throws on membership failure.
PolyMatrix infer_inclusion(const Algebroid& a, const FamilyAlgebroid& fam);

// Condition (a): the carrier preimage of Im(a_S) equals the family, decided by
// double membership against reduced bases. Condition (b): generic ranks add up.
bool is_unfolding(const Algebroid& a, const FamilyAlgebroid& fam,
                  const PolyMatrix* inclusion = nullptr);

// The induced map of anchor cokernels N_S A -> N A is an isomorphism.
// Precondition: is_unfolding.
bool is_transversal(const Algebroid& a, const FamilyAlgebroid& fam,
                    const PolyMatrix* inclusion = nullptr);

// A family plus the finite data of a bracket-respecting morphism out of the
// basic fields: one operator per base variable and, for each base pair, a
// family element witnessing [psi_i, psi_j] = ad(alpha_ij).
struct UnfoldingData {
    FamilyAlgebroid family;
    std::vector<DiffOp1> operators;
    std::map<std::pair<std::size_t, std::size_t>, FreeElement> witnesses;

    FreeElement witness(std::size_t i, std::size_t j) const;
};

// Verifies: operator well-definedness on relations, Lie-derivation property
// (degree-bounded), basic transverse symbol parts, and the exact bracket
// condition against the witnesses.
ValidationReport check_unfolding_data(const UnfoldingData& d, unsigned degree_bound);

// The extension construction: new generators f_j over the family with
// a(f_j) = symbol(psi_j), {f_j, e_i} = psi_j(e_i), {f_i, f_j} = alpha_ij.
// Throws on data-check failure; the result validates and is a transversal
// unfolding of the input family.
Algebroid unfolding_from_data(const UnfoldingData& d, unsigned degree_bound);

// Inverse construction: degree-bounded lifts alpha_j of the basic fields
// through the anchor, operators psi_j = {alpha_j, -} restricted to the family,
// witnesses {alpha_i, alpha_j}. When `lifts_out` is given it receives the
// alpha_j coefficient rows, one per base variable.
UnfoldingData data_from_unfolding(const Algebroid& a, const FamilyAlgebroid& fam,
                                  unsigned degree_bound, const PolyMatrix* inclusion = nullptr,
                                  PolyMatrix* lifts_out = nullptr);

}  // namespace algb
