#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "algb/free_element.hpp"
#include "algb/poly.hpp"

namespace algb {

// Dense matrix over the rationals, row-major. Used by the coefficient-space
// solvers (symmetry fields, operator lifts, pullback checks).
struct QMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Rational> a;

    QMatrix() = default;
    QMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
    Rational& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    const Rational& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

// In-place reduced row echelon form with deterministic (first nonzero) pivoting.
// Returns pivot column indices.
std::vector<std::size_t> rref(QMatrix& m);

std::size_t rank(QMatrix m);

// Basis of the right nullspace {x : Mx = 0}, canonical w.r.t. RREF free columns.
std::vector<std::vector<Rational>> nullspace(const QMatrix& m);

// One solution of Mx = b, if any (free variables set to zero).
std::optional<std::vector<Rational>> solve(const QMatrix& m, const std::vector<Rational>& b);

// True iff v lies in the row span of m.
bool in_row_span(const QMatrix& m, const std::vector<Rational>& v);

// ---------------------------------------------------------------------------
// Coefficient-vector extraction for the exact linear solvers: a canonical
// numbering of the (component, monomial) support shared by a family of
// free-module elements. Collect every element first, then read coordinates.
class SupportIndex {
public:
    void collect(const FreeElement& e);
    std::size_t size() const { return pos_.size(); }
    std::vector<Rational> coords(const FreeElement& e) const;

private:
    std::map<std::pair<std::size_t, Exponents>, std::size_t> pos_;
};

// ---------------------------------------------------------------------------
// Polynomial matrices (rows of rows).

using PolyMatrix = std::vector<std::vector<Poly>>;

PolyMatrix identity_matrix(const RingPtr& ring, std::size_t n);
PolyMatrix zero_matrix(const RingPtr& ring, std::size_t rows, std::size_t cols);
PolyMatrix matrix_product(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix apply_ring_map(const RingMap& f, const PolyMatrix& m);

Poly determinant(const PolyMatrix& m);

// All k x k minors (row/column subsets in lexicographic subset order).
std::vector<Poly> minors(const PolyMatrix& m, std::size_t k);

// Rank over the fraction field: largest t with a nonzero t x t minor.
std::size_t generic_rank(const PolyMatrix& m);

}  // namespace algb
