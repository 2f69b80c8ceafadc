#include "algb/algebroid.hpp"

#include <sstream>

namespace algb {

FreeElement Algebroid::gen_bracket(std::size_t i, std::size_t j) const {
    FreeElement zero(ring, ngens());
    if (i == j) return zero;
    auto it = structure.find(i < j ? std::make_pair(i, j) : std::make_pair(j, i));
    if (it == structure.end()) return zero;
    return i < j ? it->second : -it->second;
}

FreeElement Algebroid::anchor_field(const FreeElement& coeffs) const {
    FreeElement out(ring, nvars());
    for (std::size_t i = 0; i < ngens(); ++i) {
        if (coeffs[i].is_zero()) continue;
        for (std::size_t k = 0; k < nvars(); ++k) out[k] += coeffs[i] * anchor[i][k];
    }
    return out;
}

std::optional<FreeElement> Algebroid::lift_ambient(const FreeElement& ambient,
                                                   const MonomialOrder& order) const {
    SubmoduleBasis basis(ring, carrier.ambient_rank, carrier.generators, order);
    auto coeffs = basis.lift(ambient);
    if (!coeffs) return std::nullopt;
    FreeElement out(ring, ngens());
    out.components = std::move(*coeffs);
    return out;
}

Algebroid make_algebroid(RingPtr ring, PresentedModule carrier, PolyMatrix anchor,
                         std::map<std::pair<std::size_t, std::size_t>, FreeElement> structure) {
    if (anchor.size() != carrier.ngens()) throw Error("algebroid", "anchor row count mismatch");
    for (const auto& row : anchor)
        if (row.size() != ring->nvars()) throw Error("algebroid", "anchor column count mismatch");
    for (const auto& [key, val] : structure) {
        if (key.first >= key.second) throw Error("algebroid", "structure functions must be stored for i<j");
        if (key.second >= carrier.ngens() || val.rank() != carrier.ngens())
            throw Error("algebroid", "structure function index/rank mismatch");
    }
    return Algebroid{std::move(ring), std::move(carrier), std::move(anchor), std::move(structure)};
}

Algebroid tangent_algebroid(const RingPtr& ring) {
    std::size_t n = ring->nvars();
    return Algebroid{ring, PresentedModule::free_module(ring, n), identity_matrix(ring, n), {}};
}

FreeElement bracket_eval(const Algebroid& a, const FreeElement& u, const FreeElement& v,
                         const SubmoduleBasis* rels) {
    const std::size_t p = a.ngens();
    if (u.rank() != p || v.rank() != p) throw Error("algebroid", "bracket argument rank mismatch");
    FreeElement acc(a.ring, p);
    for (const auto& [key, cij] : a.structure) {
        Poly coeff = u[key.first] * v[key.second] - u[key.second] * v[key.first];
        if (coeff.is_zero()) continue;
        acc += cij.scaled(coeff);
    }
    FreeElement au = a.anchor_field(u);
    FreeElement av = a.anchor_field(v);
    for (std::size_t j = 0; j < p; ++j) {
        Poly d = field_apply(au, v[j]) - field_apply(av, u[j]);
        acc[j] += d;
    }
    if (rels) return rels->reduce(acc);
    if (a.carrier.relations.empty()) return acc;
    SubmoduleBasis basis = relation_basis(a.carrier);
    return basis.reduce(acc);
}

ValidationReport validate_algebroid(const Algebroid& a) {
    ValidationReport report;
    report.notes.push_back("unchecked hypothesis: carrier reflexivity is not decidable here");
    const std::size_t p = a.ngens();
    SubmoduleBasis rels = relation_basis(a.carrier);

    // Anchor must kill every relation row exactly (the tangent module is free).
    for (std::size_t r = 0; r < a.carrier.relations.size(); ++r) {
        FreeElement coeffs(a.ring, p);
        for (std::size_t i = 0; i < p; ++i) coeffs[i] = a.carrier.relations[r][i];
        if (!a.anchor_field(coeffs).is_zero())
            report.failures.push_back({"anchor-welldef", "relation row " + std::to_string(r)});
    }

    // Bracket well-definedness: Leibniz-expanded bracket of each relation row
    // against each generator reduces to zero.
    for (std::size_t r = 0; r < a.carrier.relations.size(); ++r) {
        FreeElement coeffs(a.ring, p);
        for (std::size_t i = 0; i < p; ++i) coeffs[i] = a.carrier.relations[r][i];
        for (std::size_t j = 0; j < p; ++j) {
            FreeElement b = bracket_eval(a, coeffs, FreeElement::unit(a.ring, p, j), &rels);
            if (!b.is_zero()) {
                report.failures.push_back(
                    {"leibniz-welldef", "relation row " + std::to_string(r) + " against generator " +
                                            std::to_string(j)});
            }
        }
    }

    // Jacobi on generator triples.
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j)
            for (std::size_t k = j + 1; k < p; ++k) {
                FreeElement ei = FreeElement::unit(a.ring, p, i);
                FreeElement ej = FreeElement::unit(a.ring, p, j);
                FreeElement ek = FreeElement::unit(a.ring, p, k);
                FreeElement s = bracket_eval(a, ei, bracket_eval(a, ej, ek, &rels), &rels);
                s += bracket_eval(a, ej, bracket_eval(a, ek, ei, &rels), &rels);
                s += bracket_eval(a, ek, bracket_eval(a, ei, ej, &rels), &rels);
                if (!rels.reduce(s).is_zero()) {
                    std::ostringstream w;
                    w << "(" << i << "," << j << "," << k << ")";
                    report.failures.push_back({"jacobi", w.str()});
                }
            }

    // The anchor is a morphism of brackets: a({e_i,e_j}) = [a(e_i), a(e_j)].
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j) {
            FreeElement lhs = a.anchor_field(a.gen_bracket(i, j));
            FreeElement vi(a.ring, a.nvars()), vj(a.ring, a.nvars());
            for (std::size_t k = 0; k < a.nvars(); ++k) {
                vi[k] = a.anchor[i][k];
                vj[k] = a.anchor[j][k];
            }
            if (!(lhs == lie_bracket_fields(vi, vj))) {
                report.failures.push_back(
                    {"anchor-morphism", "(" + std::to_string(i) + "," + std::to_string(j) + ")"});
            }
        }
    return report;
}

Ideal singular_locus(const Algebroid& a) {
    // Cokernel of the anchor: tangent generators with the anchor rows as relations.
    PresentedModule coker{a.ring, a.nvars(), {}, a.anchor};
    for (std::size_t i = 0; i < a.nvars(); ++i)
        coker.generators.push_back(FreeElement::unit(a.ring, a.nvars(), i));
    std::size_t r = coker.generic_rank();
    return fitting_ideal(coker, r);
}

PresentedModule anchor_image(const Algebroid& a) {
    std::vector<FreeElement> rows;
    for (std::size_t i = 0; i < a.ngens(); ++i) {
        FreeElement e(a.ring, a.nvars());
        for (std::size_t k = 0; k < a.nvars(); ++k) e[k] = a.anchor[i][k];
        if (!e.is_zero()) rows.push_back(std::move(e));
    }
    return PresentedModule::submodule(a.ring, a.nvars(), std::move(rows));
}

Algebroid algebroid_from_involutive_submodule(const RingPtr& ring,
                                              const std::vector<FreeElement>& fields,
                                              const MonomialOrder& order) {
    const std::size_t n = ring->nvars();
    for (const auto& f : fields)
        if (f.rank() != n) throw Error("algebroid", "fields must live in the tangent module");
    SubmoduleBasis span(ring, n, fields, order);

    PresentedModule carrier;
    carrier.ring = ring;
    carrier.ambient_rank = n;
    carrier.generators = fields;
    carrier.relations = span.syzygies();

    PolyMatrix anchor;
    for (const auto& f : fields) anchor.push_back(f.components);

    std::map<std::pair<std::size_t, std::size_t>, FreeElement> structure;
    for (std::size_t i = 0; i < fields.size(); ++i)
        for (std::size_t j = i + 1; j < fields.size(); ++j) {
            FreeElement br = lie_bracket_fields(fields[i], fields[j]);
            auto coeffs = span.lift(br);
            if (!coeffs) throw NotInvolutiveError(i, j, span.reduce(br).str());
            FreeElement c(ring, fields.size());
            c.components = std::move(*coeffs);
            if (!c.is_zero()) structure.emplace(std::make_pair(i, j), std::move(c));
        }
    return Algebroid{ring, std::move(carrier), std::move(anchor), std::move(structure)};
}

}  // namespace algb
