#include "algb/gallery.hpp"

#include <sstream>

namespace algb {

Bivector make_bivector(RingPtr ring, PolyMatrix matrix) {
    const std::size_t n = ring->nvars();
    if (matrix.size() != n) throw Error("bivector", "matrix must be n x n");
    for (const auto& row : matrix)
        if (row.size() != n) throw Error("bivector", "matrix must be n x n");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!(matrix[i][j] == -matrix[j][i]))
                throw Error("bivector", "matrix is not antisymmetric at (" + std::to_string(i) +
                                            "," + std::to_string(j) + ")");
    return Bivector{std::move(ring), std::move(matrix)};
}

Algebroid log_tangent_algebroid(const Poly& h) {
    const RingPtr& ring = h.ring();
    const std::size_t n = ring->nvars();
    if (h.is_zero()) throw Error("log-tangent", "divisor polynomial must be nonzero");

    // v(h) in (h) iff (v_1,..,v_n,t) is a syzygy of (dh/dx_1,..,dh/dx_n,h).
    std::vector<FreeElement> list;
    for (std::size_t i = 0; i < n; ++i) {
        FreeElement e(ring, 1);
        e[0] = h.derivative(i);
        list.push_back(std::move(e));
    }
    FreeElement eh(ring, 1);
    eh[0] = h;
    list.push_back(std::move(eh));

    PolyMatrix syz = syzygy_module(list, 1, ring);
    std::vector<FreeElement> fields;
    for (const auto& row : syz) {
        FreeElement v(ring, n);
        for (std::size_t i = 0; i < n; ++i) v[i] = row[i];
        if (!v.is_zero()) fields.push_back(std::move(v));
    }
    try {
        return algebroid_from_involutive_submodule(ring, fields);
    } catch (const NotInvolutiveError& e) {
        throw Error("log-involutivity",
                    std::string("log fields failed the involutivity lift (engine bug): ") +
                        e.what());
    }
}

FreeElement bott_connection(const Algebroid& log_alg, const SmoothProjection& proj,
                            const FreeElement& u, const FreeElement& q) {
    const RingPtr& ring = log_alg.ring;
    const std::size_t n = ring->nvars();
    if (u.rank() != n || q.rank() != n) throw Error("bott", "u and q must be tangent fields");

    SubmoduleBasis log_span(ring, n, log_alg.carrier.generators);
    if (!log_span.contains(q))
        throw Error("membership", "q is not a section of the log tangent module");

    // Relative log part: log fields with zero base components.
    std::vector<FreeElement> rel_tangent;
    for (std::size_t i : proj.fiber) rel_tangent.push_back(FreeElement::unit(ring, n, i));
    PresentedModule rel = PresentedModule::submodule(ring, n, rel_tangent);
    ModuleMap incl = ModuleMap::make(log_alg.carrier,
                                     PresentedModule::free_module(ring, n), log_alg.anchor);
    SubmoduleWithInclusion pre = preimage_submodule(incl, rel);
    SubmoduleBasis rel_log(ring, n, pre.module.generators);
    if (!rel_log.contains(u))
        throw Error("membership", "u is not a section of the relative log module");

    return rel_log.reduce(lie_bracket_fields(u, q));
}

PoissonAlgebroid poisson_algebroid(const Bivector& p) {
    const RingPtr& ring = p.ring;
    const std::size_t n = ring->nvars();
    Algebroid alg;
    alg.ring = ring;
    alg.carrier = PresentedModule::free_module(ring, n);
    alg.anchor = p.matrix;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            FreeElement c(ring, n);
            for (std::size_t k = 0; k < n; ++k) c[k] = p.matrix[i][j].derivative(k);
            if (!c.is_zero()) alg.structure.emplace(std::make_pair(i, j), std::move(c));
        }
    ValidationReport verdict = validate_algebroid(alg);
    return PoissonAlgebroid{std::move(alg), std::move(verdict)};
}

std::vector<TrivectorComponent> schouten_jacobiator(const Bivector& p) {
    const std::size_t n = p.ring->nvars();
    std::vector<TrivectorComponent> out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                Poly acc(p.ring);
                for (std::size_t l = 0; l < n; ++l) {
                    acc += p.matrix[i][l] * p.matrix[j][k].derivative(l);
                    acc += p.matrix[j][l] * p.matrix[k][i].derivative(l);
                    acc += p.matrix[k][l] * p.matrix[i][j].derivative(l);
                }
                out.push_back({i, j, k, std::move(acc)});
            }
    return out;
}

TransverseBlock transverse_poisson_block(const Bivector& p, const SmoothProjection& proj) {
    if (!same_ring(p.ring, proj.total)) throw ring_mismatch("transverse_poisson_block");
    const std::size_t k = proj.nbase();
    PolyMatrix block = zero_matrix(p.ring, k, k);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) block[a][b] = p.matrix[proj.base[a]][proj.base[b]];
    bool invertible = false;
    if (k == 0) {
        invertible = true;
    } else {
        Poly det = determinant(block);
        invertible = det.is_constant() && !det.is_zero();
    }
    return TransverseBlock{std::move(block), invertible};
}

DiffOp1 ConnectionData::operator_for(std::size_t base_index) const {
    FreeElement symbol(proj.total, proj.total->nvars());
    symbol[proj.base[base_index]] = Poly::constant(proj.total, Rational(1));
    return DiffOp1{module, matrices[base_index], std::move(symbol)};
}

ConnectionData make_connection(SmoothProjection proj, PresentedModule module,
                               std::vector<PolyMatrix> matrices) {
    if (matrices.size() != proj.nbase())
        throw Error("connection", "one endomorphism matrix per base variable required");
    for (const auto& m : matrices) {
        if (m.size() != module.ngens()) throw Error("connection", "matrix row count mismatch");
        for (const auto& row : m)
            if (row.size() != module.ngens())
                throw Error("connection", "matrix column count mismatch");
    }
    if (!same_ring(module.ring, proj.total)) throw ring_mismatch("connection");
    return ConnectionData{std::move(proj), std::move(module), std::move(matrices)};
}

std::optional<std::pair<std::size_t, std::size_t>> connection_flatness_witness(
    const ConnectionData& conn) {
    const std::size_t k = conn.proj.nbase();
    SubmoduleBasis rels = relation_basis(conn.module);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            DiffOp1 comm = commutator(conn.operator_for(i), conn.operator_for(j));
            for (std::size_t r = 0; r < comm.ngens(); ++r) {
                FreeElement row(conn.module.ring, comm.ngens());
                for (std::size_t c = 0; c < comm.ngens(); ++c) row[c] = comm.endo[r][c];
                if (!rels.reduce(row).is_zero()) return std::make_pair(i, j);
            }
        }
    return std::nullopt;
}

FreeElement connection_action(const ConnectionData& conn, const FreeElement& v,
                              const FreeElement& x) {
    if (v.rank() != conn.proj.total->nvars()) throw Error("connection", "v must be a tangent field");
    for (std::size_t i : conn.proj.fiber)
        if (!v[i].is_zero())
            throw Error("connection", "v must be a combination of basic fields");
    FreeElement out(conn.module.ring, conn.module.ngens());
    for (std::size_t b = 0; b < conn.proj.nbase(); ++b) {
        const Poly& g = v[conn.proj.base[b]];
        if (g.is_zero()) continue;
        out += apply_diffop(conn.operator_for(b), x).scaled(g);
    }
    if (conn.module.relations.empty()) return out;
    return relation_basis(conn.module).reduce(out);
}

FreeElement TwoCocycle::value(const ConnectionData& conn, std::size_t i, std::size_t j) const {
    FreeElement zero(conn.module.ring, conn.module.ngens());
    if (i == j) return zero;
    auto it = values.find(i < j ? std::make_pair(i, j) : std::make_pair(j, i));
    if (it == values.end()) return zero;
    return i < j ? it->second : -it->second;
}

bool is_ce_cocycle(const TwoCocycle& c, const ConnectionData& conn) {
    if (auto w = connection_flatness_witness(conn))
        throw Error("not-flat", "cocycle check requires a flat connection; witness pair (" +
                                    std::to_string(w->first) + "," + std::to_string(w->second) + ")");
    const std::size_t k = conn.proj.nbase();
    if (k < 3) return true;
    SubmoduleBasis rels = relation_basis(conn.module);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            for (std::size_t l = j + 1; l < k; ++l) {
                FreeElement s = apply_diffop(conn.operator_for(i), c.value(conn, j, l), &rels);
                s += apply_diffop(conn.operator_for(j), c.value(conn, l, i), &rels);
                s += apply_diffop(conn.operator_for(l), c.value(conn, i, j), &rels);
                if (!rels.reduce(s).is_zero()) return false;
            }
    return true;
}

Algebroid abelian_extension(const ConnectionData& conn, const TwoCocycle& c) {
    if (auto w = connection_flatness_witness(conn))
        throw Error("not-flat", "abelian_extension requires a flat connection; witness pair (" +
                                    std::to_string(w->first) + "," + std::to_string(w->second) + ")");
    if (!is_ce_cocycle(c, conn))
        throw Error("not-cocycle", "abelian_extension requires a Chevalley-Eilenberg 2-cocycle");

    const RingPtr& ring = conn.module.ring;
    const std::size_t p = conn.module.ngens();
    const std::size_t k = conn.proj.nbase();
    const std::size_t q = p + k;

    PresentedModule carrier;
    carrier.ring = ring;
    carrier.ambient_rank = q;
    for (std::size_t i = 0; i < q; ++i) carrier.generators.push_back(FreeElement::unit(ring, q, i));
    for (const auto& rel : conn.module.relations) {
        std::vector<Poly> row = rel;
        row.resize(q, Poly(ring));
        carrier.relations.push_back(std::move(row));
    }

    PolyMatrix anchor = zero_matrix(ring, q, ring->nvars());
    for (std::size_t j = 0; j < k; ++j)
        anchor[p + j][conn.proj.base[j]] = Poly::constant(ring, Rational(1));

    std::map<std::pair<std::size_t, std::size_t>, FreeElement> structure;
    auto extend = [&](const FreeElement& v) {
        FreeElement out(ring, q);
        for (std::size_t i = 0; i < p; ++i) out[i] = v[i];
        return out;
    };
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < p; ++i) {
            // {m_i, f_j} = -nabla_j(m_i).
            FreeElement row(ring, p);
            for (std::size_t col = 0; col < p; ++col) row[col] = conn.matrices[j][i][col];
            FreeElement v = extend(-row);
            if (!v.is_zero()) structure.emplace(std::make_pair(i, p + j), std::move(v));
        }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            FreeElement v = extend(c.value(conn, i, j));
            if (!v.is_zero()) structure.emplace(std::make_pair(p + i, p + j), std::move(v));
        }
    return Algebroid{ring, std::move(carrier), std::move(anchor), std::move(structure)};
}

}  // namespace algb
