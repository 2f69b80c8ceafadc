#include "algb/family.hpp"

#include <algorithm>
#include <sstream>

namespace algb {

namespace {

std::vector<FreeElement> matrix_rows_as_elements(const PolyMatrix& m, const RingPtr& ring,
                                                 std::size_t width) {
    std::vector<FreeElement> out;
    for (const auto& row : m) {
        FreeElement e(ring, width);
        for (std::size_t i = 0; i < width && i < row.size(); ++i) e[i] = row[i];
        out.push_back(std::move(e));
    }
    return out;
}

// Lift target through gens modulo modrows; returns coefficients on gens only.
std::optional<std::vector<Poly>> lift_modulo(const FreeElement& target,
                                             const std::vector<FreeElement>& gens,
                                             const std::vector<FreeElement>& modrows) {
    std::vector<FreeElement> all = gens;
    all.insert(all.end(), modrows.begin(), modrows.end());
    SubmoduleBasis basis(target.ring, target.rank(), std::move(all));
    auto coeffs = basis.lift(target);
    if (!coeffs) return std::nullopt;
    coeffs->resize(gens.size(), Poly(target.ring));
    return coeffs;
}

PresentedModule relative_tangent_module(const SmoothProjection& proj) {
    std::vector<FreeElement> gens;
    for (std::size_t i : proj.fiber)
        gens.push_back(FreeElement::unit(proj.total, proj.total->nvars(), i));
    return PresentedModule::submodule(proj.total, proj.total->nvars(), std::move(gens));
}

PresentedModule tangent_free_module(const RingPtr& ring) {
    return PresentedModule::free_module(ring, ring->nvars());
}

ModuleMap anchor_map(const Algebroid& a) {
    return ModuleMap::make(a.carrier, tangent_free_module(a.ring), a.anchor);
}

}  // namespace

FamilyAlgebroid make_family(SmoothProjection proj, Algebroid alg) {
    if (!same_ring(proj.total, alg.ring)) throw ring_mismatch("family");
    for (std::size_t i = 0; i < alg.ngens(); ++i)
        for (std::size_t b : proj.base)
            if (!alg.anchor[i][b].is_zero())
                throw Error("not-relative",
                            "anchor of generator " + std::to_string(i) +
                                " has a base-partial component");
    return FamilyAlgebroid{std::move(proj), std::move(alg)};
}

ValidationReport validate_family(const FamilyAlgebroid& fam) {
    ValidationReport report = validate_algebroid(fam.alg);
    report.notes.push_back("unchecked hypothesis: flatness of the carrier over the base");
    for (std::size_t i = 0; i < fam.alg.ngens(); ++i)
        for (std::size_t b : fam.proj.base)
            if (!fam.alg.anchor[i][b].is_zero())
                report.failures.push_back({"relative-anchor", "generator " + std::to_string(i)});
    return report;
}

Algebroid pullback_algebroid(const Algebroid& a, const RingMap& f) {
    if (!same_ring(f.source, a.ring)) throw ring_mismatch("pullback_algebroid");
    const RingPtr& yring = f.target;
    const std::size_t n = a.nvars();
    const std::size_t m = yring->nvars();
    const std::size_t p = a.ngens();

    // f*A keeps the generator symbols; presentation data is substituted.
    PresentedModule pulled;
    pulled.ring = yring;
    pulled.ambient_rank = a.carrier.ambient_rank;
    for (const auto& g : a.carrier.generators) pulled.generators.push_back(apply_ring_map(f, g));
    pulled.relations = apply_ring_map(f, a.carrier.relations);

    PresentedModule pulled_tangent = PresentedModule::free_module(yring, n);
    ModuleMap g_map = ModuleMap::make(pulled, pulled_tangent, apply_ring_map(f, a.anchor));

    PresentedModule ty = PresentedModule::free_module(yring, m);
    PolyMatrix jac = zero_matrix(yring, m, n);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < n; ++i) jac[j][i] = f.images[i].derivative(j);
    ModuleMap h_map = ModuleMap::make(ty, pulled_tangent, std::move(jac));

    FiberedProduct fp = fibered_product(g_map, h_map);
    const std::size_t q = fp.module.ngens();

    PolyMatrix anchor = fp.to_right;

    // Direct-sum bracket of generator pairs, lifted back through the
    // fibered-product generators modulo the pulled relations.
    std::vector<FreeElement> fp_rows;
    for (std::size_t i = 0; i < q; ++i) {
        FreeElement row(yring, p + m);
        for (std::size_t c = 0; c < p; ++c) row[c] = fp.to_left[i][c];
        for (std::size_t c = 0; c < m; ++c) row[p + c] = fp.to_right[i][c];
        fp_rows.push_back(std::move(row));
    }
    std::vector<FreeElement> modrows;
    for (const auto& rel : pulled.relations) {
        FreeElement row(yring, p + m);
        for (std::size_t c = 0; c < p && c < rel.size(); ++c) row[c] = rel[c];
        modrows.push_back(std::move(row));
    }

    std::map<std::pair<std::size_t, std::size_t>, FreeElement> pulled_structure;
    for (const auto& [key, val] : a.structure) {
        FreeElement sub(yring, p);
        for (std::size_t c = 0; c < p; ++c) sub[c] = apply_ring_map(f, val[c]);
        pulled_structure.emplace(key, std::move(sub));
    }
    auto pulled_gen_bracket = [&](std::size_t k, std::size_t l) {
        FreeElement zero(yring, p);
        if (k == l) return zero;
        auto it = pulled_structure.find(k < l ? std::make_pair(k, l) : std::make_pair(l, k));
        if (it == pulled_structure.end()) return zero;
        return k < l ? it->second : -it->second;
    };

    std::map<std::pair<std::size_t, std::size_t>, FreeElement> structure;
    for (std::size_t i = 0; i < q; ++i) {
        FreeElement ui(yring, m), ci(yring, p);
        for (std::size_t c = 0; c < m; ++c) ui[c] = fp.to_right[i][c];
        for (std::size_t c = 0; c < p; ++c) ci[c] = fp.to_left[i][c];
        for (std::size_t j = i + 1; j < q; ++j) {
            FreeElement uj(yring, m), cj(yring, p);
            for (std::size_t c = 0; c < m; ++c) uj[c] = fp.to_right[j][c];
            for (std::size_t c = 0; c < p; ++c) cj[c] = fp.to_left[j][c];

            FreeElement head(yring, p);
            for (std::size_t k = 0; k < p; ++k)
                for (std::size_t l = k + 1; l < p; ++l) {
                    Poly coeff = ci[k] * cj[l] - ci[l] * cj[k];
                    if (coeff.is_zero()) continue;
                    head += pulled_gen_bracket(k, l).scaled(coeff);
                }
            for (std::size_t l = 0; l < p; ++l)
                head[l] += field_apply(ui, cj[l]) - field_apply(uj, ci[l]);

            FreeElement target(yring, p + m);
            for (std::size_t c = 0; c < p; ++c) target[c] = head[c];
            FreeElement tail = lie_bracket_fields(ui, uj);
            for (std::size_t c = 0; c < m; ++c) target[p + c] = tail[c];

            auto coeffs = lift_modulo(target, fp_rows, modrows);
            if (!coeffs)
                throw Error("lift-failure", "pullback bracket of generators " + std::to_string(i) +
                                                "," + std::to_string(j) +
                                                " does not lie in the fibered product");
            FreeElement c(yring, q);
            c.components = std::move(*coeffs);
            if (!c.is_zero()) structure.emplace(std::make_pair(i, j), std::move(c));
        }
    }
    return Algebroid{yring, fp.module, std::move(anchor), std::move(structure)};
}

FamilyAlgebroid base_change_family(const FamilyAlgebroid& fam, const RingMap& f) {
    RingPtr base = fam.proj.base_ring();
    if (!same_ring(f.source, base)) throw ring_mismatch("base_change_family");
    std::vector<std::string> new_vars = fam.proj.fiber_names();
    for (const auto& v : f.target->vars()) new_vars.push_back(v);
    RingPtr total = Ring::make(new_vars);

    // Embed the new base ring into the new total ring.
    std::vector<Poly> embed_images;
    for (const auto& v : f.target->vars())
        embed_images.push_back(Poly::variable(total, *total->index_of(v)));
    RingMap embed = RingMap::make(f.target, total, std::move(embed_images));

    // Total substitution: fiber variables stay, base variables go through f.
    std::vector<Poly> images(fam.proj.total->nvars(), Poly(total));
    for (std::size_t i : fam.proj.fiber)
        images[i] = Poly::variable(total, *total->index_of(fam.proj.total->var(i)));
    for (std::size_t b = 0; b < fam.proj.base.size(); ++b)
        images[fam.proj.base[b]] = apply_ring_map(embed, f.images[b]);
    RingMap subst = RingMap::make(fam.proj.total, total, std::move(images));

    Algebroid alg;
    alg.ring = total;
    alg.carrier.ring = total;
    alg.carrier.ambient_rank = fam.alg.carrier.ambient_rank;
    for (const auto& g : fam.alg.carrier.generators)
        alg.carrier.generators.push_back(apply_ring_map(subst, g));
    alg.carrier.relations = apply_ring_map(subst, fam.alg.carrier.relations);

    alg.anchor = zero_matrix(total, fam.alg.ngens(), total->nvars());
    for (std::size_t i = 0; i < fam.alg.ngens(); ++i)
        for (std::size_t c = 0; c < fam.proj.total->nvars(); ++c) {
            if (fam.alg.anchor[i][c].is_zero()) continue;
            std::size_t new_col = *total->index_of(fam.proj.total->var(c));
            alg.anchor[i][new_col] = apply_ring_map(subst, fam.alg.anchor[i][c]);
        }

    for (const auto& [key, val] : fam.alg.structure) {
        FreeElement sub(total, fam.alg.ngens());
        for (std::size_t c = 0; c < val.rank(); ++c) sub[c] = apply_ring_map(subst, val[c]);
        alg.structure.emplace(key, std::move(sub));
    }

    SmoothProjection proj = SmoothProjection::make(total, fam.proj.fiber_names(), f.target->vars());
    return make_family(std::move(proj), std::move(alg));
}

InducedFamily induced_family(const Algebroid& a, const SmoothProjection& proj) {
    if (!same_ring(a.ring, proj.total)) throw ring_mismatch("induced_family");
    const std::size_t p = a.ngens();
    SubmoduleWithInclusion pre = preimage_submodule(anchor_map(a), relative_tangent_module(proj));
    const std::size_t q = pre.module.ngens();

    Algebroid alg;
    alg.ring = a.ring;
    alg.carrier = pre.module;
    alg.anchor = matrix_product(pre.inclusion, a.anchor);

    SubmoduleBasis arels = relation_basis(a.carrier);
    std::vector<FreeElement> incl_rows = matrix_rows_as_elements(pre.inclusion, a.ring, p);
    std::vector<FreeElement> arel_rows = matrix_rows_as_elements(a.carrier.relations, a.ring, p);

    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = i + 1; j < q; ++j) {
            FreeElement br = bracket_eval(a, incl_rows[i], incl_rows[j], &arels);
            auto coeffs = lift_modulo(br, incl_rows, arel_rows);
            if (!coeffs)
                throw Error("family-not-closed",
                            "restricted bracket of generators " + std::to_string(i) + "," +
                                std::to_string(j) + " leaves the preimage module");
            FreeElement c(a.ring, q);
            c.components = std::move(*coeffs);
            if (!c.is_zero()) alg.structure.emplace(std::make_pair(i, j), std::move(c));
        }
    return InducedFamily{make_family(proj, std::move(alg)), pre.inclusion};
}

PolyMatrix infer_inclusion(const Algebroid& a, const FamilyAlgebroid& fam) {
    if (fam.alg.carrier.ambient_rank != a.carrier.ambient_rank ||
        !same_ring(fam.alg.ring, a.ring))
        throw Error("no-inclusion",
                    "cannot infer the family inclusion: ambients differ; supply it explicitly");
    SubmoduleBasis span(a.ring, a.carrier.ambient_rank, a.carrier.generators);
    PolyMatrix incl;
    for (const auto& g : fam.alg.carrier.generators) {
        auto coeffs = span.lift(g);
        if (!coeffs)
            throw Error("not-contained", "family generator " + g.str() +
                                             " is not a member of the candidate unfolding");
        incl.push_back(std::move(*coeffs));
    }
    return incl;
}

bool is_unfolding(const Algebroid& a, const FamilyAlgebroid& fam, const PolyMatrix* inclusion) {
    PolyMatrix incl = inclusion ? *inclusion : infer_inclusion(a, fam);
    const std::size_t p = a.ngens();

    // Condition (a): a^{-1}(Im a_S) equals the family, by double membership.
    std::vector<FreeElement> im_rows;
    for (std::size_t i = 0; i < fam.alg.ngens(); ++i) {
        FreeElement e(a.ring, a.nvars());
        for (std::size_t c = 0; c < a.nvars(); ++c) e[c] = fam.alg.anchor[i][c];
        if (!e.is_zero()) im_rows.push_back(std::move(e));
    }
    PresentedModule image = PresentedModule::submodule(a.ring, a.nvars(), std::move(im_rows));
    SubmoduleWithInclusion pre = preimage_submodule(anchor_map(a), image);

    std::vector<FreeElement> incl_rows = matrix_rows_as_elements(incl, a.ring, p);
    std::vector<FreeElement> arel_rows = matrix_rows_as_elements(a.carrier.relations, a.ring, p);
    std::vector<FreeElement> pre_rows = matrix_rows_as_elements(pre.inclusion, a.ring, p);

    std::vector<FreeElement> fam_side = incl_rows;
    fam_side.insert(fam_side.end(), arel_rows.begin(), arel_rows.end());
    SubmoduleBasis fam_basis(a.ring, p, std::move(fam_side));
    for (const auto& row : pre_rows)
        if (!fam_basis.contains(row)) return false;

    std::vector<FreeElement> pre_side = pre_rows;
    pre_side.insert(pre_side.end(), arel_rows.begin(), arel_rows.end());
    SubmoduleBasis pre_basis(a.ring, p, std::move(pre_side));
    for (const auto& row : incl_rows)
        if (!pre_basis.contains(row)) return false;

    // Condition (b): rank(A) = rank(A_S) + dim(S).
    return a.carrier.generic_rank() ==
           fam.alg.carrier.generic_rank() + fam.proj.nbase();
}

bool is_transversal(const Algebroid& a, const FamilyAlgebroid& fam, const PolyMatrix* inclusion) {
    PolyMatrix incl = inclusion ? *inclusion : infer_inclusion(a, fam);
    if (!is_unfolding(a, fam, &incl))
        throw Error("precondition", "is_transversal requires an unfolding");

    const std::size_t d = fam.proj.nfiber();
    const std::size_t n = a.nvars();

    // N_S A: relative tangent generators modulo the family anchor image.
    PresentedModule ns;
    ns.ring = a.ring;
    ns.ambient_rank = d;
    for (std::size_t k = 0; k < d; ++k) ns.generators.push_back(FreeElement::unit(a.ring, d, k));
    for (std::size_t i = 0; i < fam.alg.ngens(); ++i) {
        std::vector<Poly> row;
        for (std::size_t k = 0; k < d; ++k) row.push_back(fam.alg.anchor[i][fam.proj.fiber[k]]);
        ns.relations.push_back(std::move(row));
    }

    // N A: tangent generators modulo the anchor image.
    PresentedModule na;
    na.ring = a.ring;
    na.ambient_rank = n;
    for (std::size_t k = 0; k < n; ++k) na.generators.push_back(FreeElement::unit(a.ring, n, k));
    na.relations = a.anchor;

    PolyMatrix induced = zero_matrix(a.ring, d, n);
    for (std::size_t k = 0; k < d; ++k)
        induced[k][fam.proj.fiber[k]] = Poly::constant(a.ring, Rational(1));

    return is_isomorphism(ModuleMap::make(std::move(ns), std::move(na), std::move(induced)));
}

FreeElement UnfoldingData::witness(std::size_t i, std::size_t j) const {
    FreeElement zero(family.alg.ring, family.alg.ngens());
    if (i == j) return zero;
    auto it = witnesses.find(i < j ? std::make_pair(i, j) : std::make_pair(j, i));
    if (it == witnesses.end()) return zero;
    return i < j ? it->second : -it->second;
}

ValidationReport check_unfolding_data(const UnfoldingData& d, unsigned degree_bound) {
    ValidationReport report;
    const FamilyAlgebroid& fam = d.family;
    const std::size_t k = fam.proj.nbase();
    if (d.operators.size() != k) {
        report.failures.push_back({"operator-count", "expected one operator per base variable"});
        return report;
    }
    for (std::size_t j = 0; j < k; ++j) {
        const DiffOp1& op = d.operators[j];
        if (op.ngens() != fam.alg.ngens()) {
            report.failures.push_back({"operator-module", "operator " + std::to_string(j)});
            continue;
        }
        if (!diffop_well_defined(op))
            report.failures.push_back({"operator-welldef", "operator " + std::to_string(j)});
        // Basic transverse symbol part: exactly d/ds_j.
        for (std::size_t b = 0; b < k; ++b) {
            Poly expected = b == j ? Poly::constant(fam.alg.ring, Rational(1)) : Poly(fam.alg.ring);
            if (!(op.symbol[fam.proj.base[b]] == expected)) {
                report.failures.push_back({"operator-symbol", "operator " + std::to_string(j)});
                break;
            }
        }
        if (auto w = lie_derivation_witness(op, fam.alg, degree_bound))
            report.failures.push_back({"operator-derivation",
                                       "operator " + std::to_string(j) + " at " + *w});
    }
    if (!report.ok()) return report;

    // Bracket-respecting condition: [psi_i, psi_j] = ad(alpha_ij) exactly.
    SubmoduleBasis rels = relation_basis(fam.alg.carrier);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            DiffOp1 comm = commutator(d.operators[i], d.operators[j]);
            DiffOp1 inner = ad_operator(fam.alg, d.witness(i, j));
            bool ok = comm.symbol == inner.symbol;
            for (std::size_t r = 0; ok && r < comm.ngens(); ++r) {
                FreeElement diff(fam.alg.ring, comm.ngens());
                for (std::size_t c = 0; c < comm.ngens(); ++c)
                    diff[c] = comm.endo[r][c] - inner.endo[r][c];
                ok = rels.reduce(diff).is_zero();
            }
            if (!ok)
                report.failures.push_back(
                    {"witness-bracket", "pair (" + std::to_string(i) + "," + std::to_string(j) + ")"});
        }
    return report;
}

Algebroid unfolding_from_data(const UnfoldingData& d, unsigned degree_bound) {
    ValidationReport check = check_unfolding_data(d, degree_bound);
    if (!check.ok()) {
        std::ostringstream os;
        os << "unfolding data rejected:";
        for (const auto& f : check.failures) os << " [" << f.axiom << " " << f.witness << "]";
        throw Error("unfolding-data", os.str());
    }
    const FamilyAlgebroid& fam = d.family;
    const RingPtr& ring = fam.alg.ring;
    const std::size_t p = fam.alg.ngens();
    const std::size_t k = fam.proj.nbase();
    const std::size_t q = p + k;

    PresentedModule carrier;
    carrier.ring = ring;
    carrier.ambient_rank = q;
    for (std::size_t i = 0; i < q; ++i) carrier.generators.push_back(FreeElement::unit(ring, q, i));
    for (const auto& rel : fam.alg.carrier.relations) {
        std::vector<Poly> row = rel;
        row.resize(q, Poly(ring));
        carrier.relations.push_back(std::move(row));
    }

    PolyMatrix anchor = zero_matrix(ring, q, ring->nvars());
    for (std::size_t i = 0; i < p; ++i) anchor[i] = fam.alg.anchor[i];
    for (std::size_t j = 0; j < k; ++j) anchor[p + j] = d.operators[j].symbol.components;

    std::map<std::pair<std::size_t, std::size_t>, FreeElement> structure;
    auto extend = [&](const FreeElement& v) {
        FreeElement out(ring, q);
        for (std::size_t c = 0; c < p; ++c) out[c] = v[c];
        return out;
    };
    for (const auto& [key, val] : fam.alg.structure) structure.emplace(key, extend(val));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < p; ++i) {
            // {e_i, f_j} = -psi_j(e_i).
            FreeElement row(ring, p);
            for (std::size_t c = 0; c < p; ++c) row[c] = d.operators[j].endo[i][c];
            FreeElement v = extend(-row);
            if (!v.is_zero()) structure.emplace(std::make_pair(i, p + j), std::move(v));
        }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            FreeElement v = extend(d.witness(i, j));
            if (!v.is_zero()) structure.emplace(std::make_pair(p + i, p + j), std::move(v));
        }

    Algebroid out{ring, std::move(carrier), std::move(anchor), std::move(structure)};
    ValidationReport verdict = validate_algebroid(out);
    if (!verdict.ok()) {
        std::ostringstream os;
        os << "constructed unfolding fails validation:";
        for (const auto& f : verdict.failures) os << " [" << f.axiom << " " << f.witness << "]";
        throw Error("jacobi-obstruction", os.str());
    }

    PolyMatrix incl = zero_matrix(ring, p, q);
    for (std::size_t i = 0; i < p; ++i) incl[i][i] = Poly::constant(ring, Rational(1));
    if (!is_unfolding(out, fam, &incl) || !is_transversal(out, fam, &incl))
        throw Error("unfolding-postcondition",
                    "constructed algebroid is not a transversal unfolding of the family");
    return out;
}

UnfoldingData data_from_unfolding(const Algebroid& a, const FamilyAlgebroid& fam,
                                  unsigned degree_bound, const PolyMatrix* inclusion,
                                  PolyMatrix* lifts_out) {
    PolyMatrix incl = inclusion ? *inclusion : infer_inclusion(a, fam);
    if (!is_unfolding(a, fam, &incl))
        throw Error("not-an-unfolding", "data extraction requires an unfolding");
    if (!is_transversal(a, fam, &incl))
        throw Error("not-transversal", "data extraction requires a transversal unfolding");

    const RingPtr& ring = a.ring;
    const std::size_t p = a.ngens();
    const std::size_t k = fam.proj.nbase();

    // Degree-bounded lift of each basic field through the anchor: coefficients
    // gamma with (gamma * anchor) = d/ds_j modulo the relative tangent part.
    std::vector<Exponents> monos = exponents_up_to(ring->nvars(), degree_bound);
    std::vector<FreeElement> lifts;
    {
        // Columns: unknown coefficient (generator i, monomial m). Rows: the
        // base components of the anchor image.
        std::vector<FreeElement> residues;
        SupportIndex support;
        for (std::size_t i = 0; i < p; ++i)
            for (const auto& e : monos) {
                Poly g = Poly::monomial(ring, e, Rational(1));
                FreeElement res(ring, k);
                for (std::size_t b = 0; b < k; ++b)
                    res[b] = g * a.anchor[i][fam.proj.base[b]];
                support.collect(res);
                residues.push_back(std::move(res));
            }
        for (std::size_t j = 0; j < k; ++j) {
            FreeElement rhs(ring, k);
            rhs[j] = Poly::constant(ring, Rational(1));
            support.collect(rhs);
        }
        QMatrix m(support.size(), residues.size());
        for (std::size_t c = 0; c < residues.size(); ++c) {
            std::vector<Rational> col = support.coords(residues[c]);
            for (std::size_t r = 0; r < col.size(); ++r) m.at(r, c) = col[r];
        }
        for (std::size_t j = 0; j < k; ++j) {
            FreeElement rhs(ring, k);
            rhs[j] = Poly::constant(ring, Rational(1));
            auto sol = solve(m, support.coords(rhs));
            if (!sol)
                throw Error("no-lift", "no anchor lift of basic field " + std::to_string(j) +
                                           " within degree bound " + std::to_string(degree_bound));
            FreeElement gamma(ring, p);
            std::size_t idx = 0;
            for (std::size_t i = 0; i < p; ++i)
                for (const auto& e : monos) {
                    if (!(*sol)[idx].is_zero())
                        gamma[i] += Poly::monomial(ring, e, (*sol)[idx]);
                    ++idx;
                }
            lifts.push_back(std::move(gamma));
        }
    }

    if (lifts_out) {
        lifts_out->clear();
        for (const auto& gamma : lifts) lifts_out->push_back(gamma.components);
    }

    SubmoduleBasis arels = relation_basis(a.carrier);
    std::vector<FreeElement> incl_rows = matrix_rows_as_elements(incl, ring, p);
    std::vector<FreeElement> arel_rows = matrix_rows_as_elements(a.carrier.relations, ring, p);

    auto to_family = [&](const FreeElement& v, const char* what) {
        auto coeffs = lift_modulo(v, incl_rows, arel_rows);
        if (!coeffs)
            throw Error("lift-failure", std::string(what) + " does not lie in the family");
        FreeElement out(ring, fam.alg.ngens());
        out.components = std::move(*coeffs);
        return out;
    };

    UnfoldingData data{fam, {}, {}};
    for (std::size_t j = 0; j < k; ++j) {
        PolyMatrix endo;
        for (std::size_t i = 0; i < fam.alg.ngens(); ++i) {
            FreeElement br = bracket_eval(a, lifts[j], incl_rows[i], &arels);
            endo.push_back(to_family(br, "operator value").components);
        }
        data.operators.push_back(
            DiffOp1{fam.alg.carrier, std::move(endo), a.anchor_field(lifts[j])});
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            FreeElement br = bracket_eval(a, lifts[i], lifts[j], &arels);
            FreeElement w = to_family(br, "bracket witness");
            if (!w.is_zero()) data.witnesses.emplace(std::make_pair(i, j), std::move(w));
        }
    return data;
}

}  // namespace algb
