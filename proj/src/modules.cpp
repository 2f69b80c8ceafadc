#include "algb/modules.hpp"

#include <algorithm>
#include <set>

#include "algb/error.hpp"

namespace algb {

namespace {

std::vector<FreeElement> rows_as_elements(const PolyMatrix& m, const RingPtr& ring,
                                          std::size_t width) {
    std::vector<FreeElement> out;
    out.reserve(m.size());
    for (const auto& row : m) {
        if (row.size() != width) throw Error("module", "relation row width mismatch");
        FreeElement e(ring, width);
        for (std::size_t i = 0; i < width; ++i) e[i] = row[i];
        out.push_back(std::move(e));
    }
    return out;
}

PolyMatrix elements_as_rows(const std::vector<FreeElement>& els) {
    PolyMatrix out;
    out.reserve(els.size());
    for (const auto& e : els) out.push_back(e.components);
    return out;
}

// Generating set of {d : d * vectors lies in span(modrows)}, i.e. the
// relations of `vectors` inside the quotient by `modrows`. Both live in the
// same coordinate free module of rank `width`.
PolyMatrix relations_modulo(const std::vector<FreeElement>& vectors,
                            const std::vector<FreeElement>& modrows, std::size_t width,
                            const RingPtr& ring, const MonomialOrder& order) {
    std::vector<FreeElement> all = vectors;
    all.insert(all.end(), modrows.begin(), modrows.end());
    PolyMatrix syz = syzygy_module(all, width, ring, order);
    PolyMatrix out;
    for (const auto& row : syz) {
        std::vector<Poly> head(row.begin(), row.begin() + static_cast<long>(vectors.size()));
        bool zero = std::all_of(head.begin(), head.end(), [](const Poly& p) { return p.is_zero(); });
        if (!zero) out.push_back(std::move(head));
    }
    return out;
}

}  // namespace

PresentedModule PresentedModule::free_module(const RingPtr& ring, std::size_t rank) {
    PresentedModule m{ring, rank, {}, {}};
    for (std::size_t i = 0; i < rank; ++i)
        m.generators.push_back(FreeElement::unit(ring, rank, i));
    return m;
}

PresentedModule PresentedModule::zero_module(const RingPtr& ring, std::size_t ambient_rank) {
    return PresentedModule{ring, ambient_rank, {}, {}};
}

PresentedModule PresentedModule::submodule(const RingPtr& ring, std::size_t ambient_rank,
                                           std::vector<FreeElement> gens,
                                           const MonomialOrder& order) {
    PresentedModule m{ring, ambient_rank, std::move(gens), {}};
    m.relations = syzygy_module(m.generators, ambient_rank, ring, order);
    return m;
}

FreeElement PresentedModule::realize(const std::vector<Poly>& coeffs) const {
    if (coeffs.size() != ngens()) throw Error("module", "coefficient vector length mismatch");
    FreeElement out(ring, ambient_rank);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].is_zero()) continue;
        out += generators[i].scaled(coeffs[i]);
    }
    return out;
}

FreeElement PresentedModule::realize(const FreeElement& coeffs) const {
    return realize(coeffs.components);
}

std::size_t PresentedModule::generic_rank() const {
    std::size_t rel_rank = relations.empty() ? 0 : algb::generic_rank(relations);
    return ngens() - rel_rank;
}

bool PresentedModule::is_zero(const MonomialOrder& order) const {
    if (ngens() == 0) return true;
    SubmoduleBasis rels = relation_basis(*this, order);
    for (std::size_t i = 0; i < ngens(); ++i)
        if (!rels.contains(FreeElement::unit(ring, ngens(), i))) return false;
    return true;
}

SubmoduleBasis relation_basis(const PresentedModule& m, const MonomialOrder& order) {
    return SubmoduleBasis(m.ring, m.ngens(), rows_as_elements(m.relations, m.ring, m.ngens()),
                          order);
}

ModuleMap ModuleMap::make(PresentedModule source, PresentedModule target, PolyMatrix matrix) {
    if (matrix.size() != source.ngens()) throw Error("module-map", "matrix row count mismatch");
    for (const auto& row : matrix)
        if (row.size() != target.ngens()) throw Error("module-map", "matrix column count mismatch");
    if (!same_ring(source.ring, target.ring)) throw ring_mismatch("module map");
    return ModuleMap{std::move(source), std::move(target), std::move(matrix)};
}

ModuleMap ModuleMap::identity(const PresentedModule& m) {
    return ModuleMap{m, m, identity_matrix(m.ring, m.ngens())};
}

bool ModuleMap::is_well_defined(const MonomialOrder& order) const {
    if (source.relations.empty()) return true;
    SubmoduleBasis tgt_rels = relation_basis(target, order);
    for (const auto& rel : source.relations) {
        FreeElement image(source.ring, target.ngens());
        for (std::size_t i = 0; i < rel.size(); ++i) {
            if (rel[i].is_zero()) continue;
            for (std::size_t j = 0; j < target.ngens(); ++j) image[j] += rel[i] * matrix[i][j];
        }
        if (!tgt_rels.contains(image)) return false;
    }
    return true;
}

void ModuleMap::require_well_defined(const MonomialOrder& order) const {
    if (!is_well_defined(order))
        throw Error("ill-defined-map", "module map does not respect source relations");
}

SubmoduleWithInclusion kernel_of_map(const ModuleMap& f, const MonomialOrder& order) {
    const std::size_t p = f.source.ngens();
    const std::size_t q = f.target.ngens();
    std::vector<FreeElement> list;
    list.reserve(p + f.target.relations.size());
    for (std::size_t i = 0; i < p; ++i) {
        FreeElement row(f.source.ring, q);
        for (std::size_t j = 0; j < q; ++j) row[j] = f.matrix[i][j];
        list.push_back(std::move(row));
    }
    auto tgt_rels = rows_as_elements(f.target.relations, f.source.ring, q);
    list.insert(list.end(), tgt_rels.begin(), tgt_rels.end());

    PolyMatrix syz = syzygy_module(list, q, f.source.ring, order);
    PolyMatrix inclusion;
    for (const auto& row : syz) {
        std::vector<Poly> head(row.begin(), row.begin() + static_cast<long>(p));
        bool zero = std::all_of(head.begin(), head.end(), [](const Poly& x) { return x.is_zero(); });
        if (!zero) inclusion.push_back(std::move(head));
    }

    PresentedModule ker;
    ker.ring = f.source.ring;
    ker.ambient_rank = f.source.ambient_rank;
    auto incl_elems = rows_as_elements(inclusion, f.source.ring, p);
    for (const auto& c : incl_elems) ker.generators.push_back(f.source.realize(c));
    ker.relations = relations_modulo(incl_elems, rows_as_elements(f.source.relations, f.source.ring, p),
                                     p, f.source.ring, order);
    return {std::move(ker), std::move(inclusion)};
}

SubmoduleWithInclusion preimage_submodule(const ModuleMap& f, const PresentedModule& n,
                                          const MonomialOrder& order) {
    if (n.ambient_rank != f.target.ambient_rank)
        throw Error("ambient-mismatch", "preimage: submodule ambient does not match target ambient");
    const std::size_t p = f.source.ngens();
    std::vector<FreeElement> list;
    for (std::size_t i = 0; i < p; ++i) {
        std::vector<Poly> row = f.matrix[i];
        list.push_back(f.target.realize(row));
    }
    list.insert(list.end(), n.generators.begin(), n.generators.end());

    PolyMatrix syz = syzygy_module(list, f.target.ambient_rank, f.source.ring, order);
    PolyMatrix inclusion;
    for (const auto& row : syz) {
        std::vector<Poly> head(row.begin(), row.begin() + static_cast<long>(p));
        bool zero = std::all_of(head.begin(), head.end(), [](const Poly& x) { return x.is_zero(); });
        if (!zero) inclusion.push_back(std::move(head));
    }

    PresentedModule pre;
    pre.ring = f.source.ring;
    pre.ambient_rank = f.source.ambient_rank;
    auto incl_elems = rows_as_elements(inclusion, f.source.ring, p);
    for (const auto& c : incl_elems) pre.generators.push_back(f.source.realize(c));
    pre.relations = relations_modulo(incl_elems, rows_as_elements(f.source.relations, f.source.ring, p),
                                     p, f.source.ring, order);
    return {std::move(pre), std::move(inclusion)};
}

FiberedProduct fibered_product(const ModuleMap& g, const ModuleMap& h, const MonomialOrder& order) {
    if (!same_ring(g.target.ring, h.target.ring) || g.target.ngens() != h.target.ngens() ||
        g.target.ambient_rank != h.target.ambient_rank)
        throw Error("target-mismatch", "fibered product needs a common target");
    const RingPtr& ring = g.source.ring;
    const std::size_t p = g.source.ngens(), q = h.source.ngens();
    const std::size_t amb = g.source.ambient_rank + h.source.ambient_rank;

    PresentedModule ds;
    ds.ring = ring;
    ds.ambient_rank = amb;
    for (std::size_t i = 0; i < p; ++i) {
        FreeElement e(ring, amb);
        for (std::size_t c = 0; c < g.source.ambient_rank; ++c) e[c] = g.source.generators[i][c];
        ds.generators.push_back(std::move(e));
    }
    for (std::size_t j = 0; j < q; ++j) {
        FreeElement e(ring, amb);
        for (std::size_t c = 0; c < h.source.ambient_rank; ++c)
            e[g.source.ambient_rank + c] = h.source.generators[j][c];
        ds.generators.push_back(std::move(e));
    }
    for (const auto& row : g.source.relations) {
        std::vector<Poly> r = row;
        r.resize(p + q, Poly(ring));
        ds.relations.push_back(std::move(r));
    }
    for (const auto& row : h.source.relations) {
        std::vector<Poly> r(p, Poly(ring));
        r.insert(r.end(), row.begin(), row.end());
        ds.relations.push_back(std::move(r));
    }

    PolyMatrix stacked;
    for (std::size_t i = 0; i < p; ++i) stacked.push_back(g.matrix[i]);
    for (std::size_t j = 0; j < q; ++j) {
        std::vector<Poly> row;
        row.reserve(h.matrix[j].size());
        for (const auto& x : h.matrix[j]) row.push_back(-x);
        stacked.push_back(std::move(row));
    }

    ModuleMap diff = ModuleMap::make(ds, g.target, std::move(stacked));
    SubmoduleWithInclusion ker = kernel_of_map(diff, order);

    FiberedProduct fp;
    fp.module = std::move(ker.module);
    for (const auto& row : ker.inclusion) {
        fp.to_left.emplace_back(row.begin(), row.begin() + static_cast<long>(p));
        fp.to_right.emplace_back(row.begin() + static_cast<long>(p), row.end());
    }
    return fp;
}

PresentedModule cokernel(const ModuleMap& f) {
    PresentedModule coker = f.target;
    for (const auto& row : f.matrix) coker.relations.push_back(row);
    return coker;
}

Ideal fitting_ideal(const PresentedModule& m, std::size_t k) {
    Ideal out{m.ring, {}};
    if (m.ngens() <= k) {
        out.generators.push_back(Poly::constant(m.ring, Rational(1)));
        return out;
    }
    std::size_t t = m.ngens() - k;
    std::vector<Poly> dets = minors(m.relations, t);
    std::set<std::string> seen;
    for (auto& d : dets) {
        if (d.is_zero()) continue;
        if (seen.insert(d.str()).second) out.generators.push_back(std::move(d));
    }
    return out;
}

bool is_isomorphism(const ModuleMap& f, const MonomialOrder& order) {
    f.require_well_defined(order);
    // Surjectivity: every target generator is hit modulo target relations.
    std::vector<FreeElement> cover = rows_as_elements(f.matrix, f.source.ring, f.target.ngens());
    auto tgt_rels = rows_as_elements(f.target.relations, f.source.ring, f.target.ngens());
    cover.insert(cover.end(), tgt_rels.begin(), tgt_rels.end());
    SubmoduleBasis cover_basis(f.source.ring, f.target.ngens(), std::move(cover), order);
    for (std::size_t j = 0; j < f.target.ngens(); ++j)
        if (!cover_basis.contains(FreeElement::unit(f.source.ring, f.target.ngens(), j)))
            return false;
    // Injectivity: the kernel lies inside the source relation span.
    SubmoduleWithInclusion ker = kernel_of_map(f, order);
    SubmoduleBasis src_rels = relation_basis(f.source, order);
    for (const auto& row : ker.inclusion) {
        FreeElement e(f.source.ring, f.source.ngens());
        for (std::size_t i = 0; i < row.size(); ++i) e[i] = row[i];
        if (!src_rels.contains(e)) return false;
    }
    return true;
}

PresentedModule normalized(const PresentedModule& m, const MonomialOrder& order) {
    if (m.ngens() == 0) return m;
    SubmoduleBasis rels = relation_basis(m, order);
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < m.ngens(); ++i)
        if (!rels.contains(FreeElement::unit(m.ring, m.ngens(), i))) kept.push_back(i);
    if (kept.size() == m.ngens()) return m;

    PresentedModule out;
    out.ring = m.ring;
    out.ambient_rank = m.ambient_rank;
    for (std::size_t i : kept) out.generators.push_back(m.generators[i]);
    for (const auto& row : m.relations) {
        std::vector<Poly> r;
        r.reserve(kept.size());
        for (std::size_t i : kept) r.push_back(row[i]);
        bool zero = std::all_of(r.begin(), r.end(), [](const Poly& p) { return p.is_zero(); });
        if (!zero) out.relations.push_back(std::move(r));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Ideals

namespace {

std::vector<FreeElement> ideal_elements(const Ideal& ideal) {
    std::vector<FreeElement> out;
    for (const auto& p : ideal.generators) {
        FreeElement e(ideal.ring, 1);
        e[0] = p;
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace

std::vector<Poly> ideal_groebner(const Ideal& ideal, const MonomialOrder& order) {
    auto basis = groebner_basis(ideal_elements(ideal), 1, ideal.ring, order);
    std::vector<Poly> out;
    out.reserve(basis.size());
    for (const auto& e : basis) out.push_back(e[0]);
    return out;
}

bool ideal_contains(const Ideal& ideal, const Poly& p, const MonomialOrder& order) {
    auto basis = groebner_basis(ideal_elements(ideal), 1, ideal.ring, order);
    FreeElement e(ideal.ring, 1);
    e[0] = p;
    return normal_form(e, basis, order).is_zero();
}

bool ideals_equal(const Ideal& a, const Ideal& b, const MonomialOrder& order) {
    for (const auto& p : b.generators)
        if (!ideal_contains(a, p, order)) return false;
    for (const auto& p : a.generators)
        if (!ideal_contains(b, p, order)) return false;
    return true;
}

bool is_unit_ideal(const Ideal& ideal, const MonomialOrder& order) {
    return ideal_contains(ideal, Poly::constant(ideal.ring, Rational(1)), order);
}

int ideal_dimension(const Ideal& ideal, const MonomialOrder& order) {
    const std::size_t n = ideal.ring->nvars();
    std::vector<Poly> gb = ideal_groebner(ideal, order);
    std::vector<Exponents> leads;
    for (const auto& p : gb) {
        // Leading exponent under the order.
        const Exponents* best = nullptr;
        for (const auto& [e, c] : p.terms())
            if (!best || order.compare_expo(e, *best) > 0) best = &e;
        if (!best) continue;
        if (total_degree(*best) == 0) return -1;  // unit ideal
        leads.push_back(*best);
    }
    // dim = size of the largest variable subset S such that no leading
    // monomial is supported entirely inside S.
    int best_dim = 0;
    for (std::size_t mask = 0; mask < (1ull << n); ++mask) {
        int size = __builtin_popcountll(mask);
        if (size <= best_dim && mask != 0) continue;
        bool independent = true;
        for (const auto& e : leads) {
            bool inside = true;
            for (std::size_t v = 0; v < n; ++v)
                if (e[v] > 0 && !(mask & (1ull << v))) {
                    inside = false;
                    break;
                }
            if (inside) {
                independent = false;
                break;
            }
        }
        if (independent) best_dim = std::max(best_dim, size);
    }
    return best_dim;
}

}  // namespace algb
