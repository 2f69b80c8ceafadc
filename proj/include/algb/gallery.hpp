#pragma once

#include "algb/family.hpp"

namespace algb {

// Antisymmetric bivector matrix; the anchor datum of a Poisson structure on
// the coframe module.
struct Bivector {
    RingPtr ring;
    PolyMatrix matrix;  // n x n, Pi = -Pi^T exactly
};

Bivector make_bivector(RingPtr ring, PolyMatrix matrix);

// Log tangent algebroid of the principal divisor h: carrier {v : v(h) in (h)}
// with inclusion anchor; log fields are involutive, so the bracket comes from
// the submodule construction (a lift failure there is an engine bug, not an
// input error).
Algebroid log_tangent_algebroid(const Poly& h);

// Bott partial connection on the normal quotient of a log family:
// nabla_u [q] = class of [u, q] modulo the relative log submodule.
// u must lie in the relative log part, q in the log module.
FreeElement bott_connection(const Algebroid& log_alg, const SmoothProjection& proj,
                            const FreeElement& u, const FreeElement& q);

struct PoissonAlgebroid {
    Algebroid algebroid;
    ValidationReport verdict;
};

// Coframe algebroid of a bivector: free carrier on dx_1..dx_n, anchor Pi,
// {dx_i, dx_j} = d(Pi_ij). The verdict records the Jacobi check; it fails
// exactly when the Schouten jacobiator is nonzero.
PoissonAlgebroid poisson_algebroid(const Bivector& p);

struct TrivectorComponent {
    std::size_t i, j, k;
    Poly value;
};

// J^{ijk} = sum_l (Pi_il d_l Pi_jk + Pi_jl d_l Pi_ki + Pi_kl d_l Pi_ij), i<j<k.
std::vector<TrivectorComponent> schouten_jacobiator(const Bivector& p);

struct TransverseBlock {
    PolyMatrix block;
    bool invertible;  // determinant is a nonzero rational constant
};

TransverseBlock transverse_poisson_block(const Bivector& p, const SmoothProjection& proj);

// Flat connection data on a module over a product: one endomorphism matrix per
// base variable, acting through the coordinate splitting.
struct ConnectionData {
    SmoothProjection proj;
    PresentedModule module;
    std::vector<PolyMatrix> matrices;

    DiffOp1 operator_for(std::size_t base_index) const;
};

ConnectionData make_connection(SmoothProjection proj, PresentedModule module,
                               std::vector<PolyMatrix> matrices);

// Witness pair (i, j) with [nabla_i, nabla_j] != 0, if any.
std::optional<std::pair<std::size_t, std::size_t>> connection_flatness_witness(
    const ConnectionData& conn);

// nabla_v(x) for v a combination of basic fields; the coordinate splitting
// differentiates the coefficients and the matrices act on the generators.
FreeElement connection_action(const ConnectionData& conn, const FreeElement& v,
                              const FreeElement& x);

struct TwoCocycle {
    std::map<std::pair<std::size_t, std::size_t>, FreeElement> values;  // i<j

    FreeElement value(const ConnectionData& conn, std::size_t i, std::size_t j) const;
};

// Chevalley-Eilenberg 2-cocycle condition on basic triples; the basic fields
// commute, so only the connection terms survive. Vacuous below base rank 3.
bool is_ce_cocycle(const TwoCocycle& c, const ConnectionData& conn);

// Abelian extension 0 -> F -> A -> pi*T_S -> 0: F abelian with zero anchor,
// {f_j, m} = nabla_j(m), {f_i, f_j} = c_ij.
Algebroid abelian_extension(const ConnectionData& conn, const TwoCocycle& c);

}  // namespace algb
