#pragma once

#include <optional>
#include <vector>

#include "algb/free_element.hpp"
#include "algb/linalg.hpp"
#include "algb/order.hpp"

namespace algb {

struct GroebnerResult {
    // The unique reduced Groebner basis of the span, monic, sorted by leading
    // term ascending.
    std::vector<FreeElement> basis;
    // basis[i] = sum_j lift[i][j] * gens[j].
    PolyMatrix lift;
    // Rows generate (and form a Groebner basis of) the syzygy module of gens.
    PolyMatrix syzygies;
};

// Buchberger with normal-pair selection and chain-criterion elimination, run
// on the graph {gen_i + eps_i} so that lifts and syzygies fall out of the same
// computation. Deterministic: identical inputs give identical outputs, and the
// basis itself depends only on the span and the order.
GroebnerResult groebner_with_lift(const std::vector<FreeElement>& gens, std::size_t rank,
                                  const RingPtr& ring, const MonomialOrder& order);

std::vector<FreeElement> groebner_basis(const std::vector<FreeElement>& gens, std::size_t rank,
                                        const RingPtr& ring, const MonomialOrder& order);

// Unique remainder against a Groebner basis; reducers are chosen first-in-basis-order.
FreeElement normal_form(const FreeElement& e, const std::vector<FreeElement>& basis,
                        const MonomialOrder& order);

PolyMatrix syzygy_module(const std::vector<FreeElement>& gens, std::size_t rank,
                         const RingPtr& ring,
                         const MonomialOrder& order = MonomialOrder::grevlex_top());

// A fixed generator list with its Groebner data; the workhorse for membership,
// equality of submodules, and expressing elements in the original generators.
class SubmoduleBasis {
public:
    SubmoduleBasis(RingPtr ring, std::size_t rank, std::vector<FreeElement> gens,
                   MonomialOrder order = MonomialOrder::grevlex_top());

    const std::vector<FreeElement>& gens() const { return gens_; }
    const std::vector<FreeElement>& basis() const { return result_.basis; }
    const PolyMatrix& syzygies() const { return result_.syzygies; }
    const MonomialOrder& order() const { return order_; }
    std::size_t rank() const { return rank_; }
    bool is_zero_module() const { return result_.basis.empty(); }

    FreeElement reduce(const FreeElement& e) const;
    bool contains(const FreeElement& e) const { return reduce(e).is_zero(); }
    // Coefficients on the original generators, if e lies in the span.
    std::optional<std::vector<Poly>> lift(const FreeElement& e) const;

private:
    RingPtr ring_;
    std::size_t rank_;
    std::vector<FreeElement> gens_;
    MonomialOrder order_;
    GroebnerResult result_;
    // Graph basis rows (element, lift) used by lift().
    std::vector<FreeElement> graph_;
};

}  // namespace algb
