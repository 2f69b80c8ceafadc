#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algb/modules.hpp"

namespace algb {

// Lie algebroid over an affine model: a presented carrier module, an anchor
// into the free tangent module O^n (rows of `anchor` are the anchor images of
// the carrier generators in the basis d/dx_1 .. d/dx_n), and structure
// functions {e_i, e_j} = sum_k c_ijk e_k stored for i < j only; antisymmetry
// is structural. All other bracket values derive from the Leibniz rule.
struct Algebroid {
    RingPtr ring;
    PresentedModule carrier;
    PolyMatrix anchor;
    std::map<std::pair<std::size_t, std::size_t>, FreeElement> structure;

    std::size_t ngens() const { return carrier.ngens(); }
    std::size_t nvars() const { return ring->nvars(); }

    // {e_i, e_j} as a coefficient vector, any i, j.
    FreeElement gen_bracket(std::size_t i, std::size_t j) const;
    // Anchor image of a coefficient vector, as a tangent field.
    FreeElement anchor_field(const FreeElement& coeffs) const;
    // Express an ambient carrier vector in the carrier generators.
    std::optional<FreeElement> lift_ambient(const FreeElement& ambient,
                                            const MonomialOrder& order = MonomialOrder::grevlex_top()) const;
};

Algebroid make_algebroid(RingPtr ring, PresentedModule carrier, PolyMatrix anchor,
                         std::map<std::pair<std::size_t, std::size_t>, FreeElement> structure);

Algebroid tangent_algebroid(const RingPtr& ring);

// Bilinear Leibniz extension of the structure functions:
//   {u, v} = sum_{i<j} (u_i v_j - u_j v_i) {e_i,e_j}
//            + sum_j a(u)(v_j) e_j - sum_i a(v)(u_i) e_i,
// normal-formed against the carrier relations. `rels` may carry a prebuilt
// relation basis to amortize repeated calls.
FreeElement bracket_eval(const Algebroid& a, const FreeElement& u, const FreeElement& v,
                         const SubmoduleBasis* rels = nullptr);

struct ValidationIssue {
    std::string axiom;  // antisymmetry | jacobi | leibniz-welldef | anchor-welldef | anchor-morphism | ...
    std::string witness;
};

struct ValidationReport {
    std::vector<ValidationIssue> failures;
    std::vector<std::string> notes;
    bool ok() const { return failures.empty(); }
};

// Checks, via normal forms: well-definedness of anchor and bracket against
// every relation row, the Jacobi identity on generator triples, and that the
// anchor carries the bracket to the classical Lie bracket of vector fields.
// Reflexivity of the carrier is an unchecked hypothesis, flagged in notes.
ValidationReport validate_algebroid(const Algebroid& a);

// V(Fitt_r(coker(anchor))), r = generic rank of the cokernel.
Ideal singular_locus(const Algebroid& a);

PresentedModule anchor_image(const Algebroid& a);

// Error payload for a failed involutivity lift.
class NotInvolutiveError : public Error {
public:
    NotInvolutiveError(std::size_t i, std::size_t j, std::string remainder)
        : Error("not-involutive", "bracket of generators " + std::to_string(i) + "," +
                                      std::to_string(j) + " is not in the submodule; remainder " +
                                      remainder),
          i_(i), j_(j), remainder_(std::move(remainder)) {}
    std::size_t gen_i() const { return i_; }
    std::size_t gen_j() const { return j_; }
    const std::string& remainder() const { return remainder_; }

private:
    std::size_t i_, j_;
    std::string remainder_;
};

// Foliation-type algebroid: carrier is the span of the given tangent fields
// with syzygy relations, the anchor is the inclusion, and structure functions
// are Groebner lifts of the classical brackets [g_i, g_j].
Algebroid algebroid_from_involutive_submodule(const RingPtr& ring,
                                              const std::vector<FreeElement>& fields,
                                              const MonomialOrder& order = MonomialOrder::grevlex_top());

}  // namespace algb
