#include "algb/diffop.hpp"

#include <algorithm>
#include <sstream>

namespace algb {

namespace {

// Raw action on a coefficient vector, no reduction.
FreeElement raw_apply(const DiffOp1& op, const FreeElement& coeffs) {
    const std::size_t p = op.ngens();
    if (coeffs.rank() != p) throw Error("diffop", "apply: rank mismatch");
    FreeElement out(op.module.ring, p);
    for (std::size_t i = 0; i < p; ++i) {
        if (coeffs[i].is_zero()) continue;
        for (std::size_t j = 0; j < p; ++j) out[j] += coeffs[i] * op.endo[i][j];
        out[i] += field_apply(op.symbol, coeffs[i]);
    }
    return out;
}

}  // namespace

DiffOp1 make_diffop(PresentedModule module, PolyMatrix endo, FreeElement symbol) {
    if (endo.size() != module.ngens()) throw Error("diffop", "endo row count mismatch");
    for (const auto& row : endo)
        if (row.size() != module.ngens()) throw Error("diffop", "endo column count mismatch");
    if (symbol.rank() != module.ring->nvars())
        throw Error("diffop", "symbol must be a tangent field");
    return DiffOp1{std::move(module), std::move(endo), std::move(symbol)};
}

DiffOp1 zero_diffop(const PresentedModule& module) {
    return DiffOp1{module, zero_matrix(module.ring, module.ngens(), module.ngens()),
                   FreeElement(module.ring, module.ring->nvars())};
}

FreeElement apply_diffop(const DiffOp1& op, const FreeElement& coeffs, const SubmoduleBasis* rels) {
    FreeElement out = raw_apply(op, coeffs);
    if (rels) return rels->reduce(out);
    if (op.module.relations.empty()) return out;
    SubmoduleBasis basis = relation_basis(op.module);
    return basis.reduce(out);
}

bool diffop_well_defined(const DiffOp1& op) {
    if (op.module.relations.empty()) return true;
    SubmoduleBasis rels = relation_basis(op.module);
    for (const auto& row : op.module.relations) {
        FreeElement coeffs(op.module.ring, op.ngens());
        for (std::size_t i = 0; i < row.size(); ++i) coeffs[i] = row[i];
        if (!rels.reduce(raw_apply(op, coeffs)).is_zero()) return false;
    }
    return true;
}

DiffOp1 commutator(const DiffOp1& a, const DiffOp1& b) {
    if (a.ngens() != b.ngens() || !same_ring(a.module.ring, b.module.ring))
        throw Error("diffop", "commutator: module mismatch");
    const std::size_t p = a.ngens();
    PolyMatrix endo;
    endo.reserve(p);
    for (std::size_t i = 0; i < p; ++i) {
        FreeElement bi(a.module.ring, p), ai(a.module.ring, p);
        for (std::size_t j = 0; j < p; ++j) {
            bi[j] = b.endo[i][j];
            ai[j] = a.endo[i][j];
        }
        FreeElement row = raw_apply(a, bi) - raw_apply(b, ai);
        endo.push_back(row.components);
    }
    return DiffOp1{a.module, std::move(endo), lie_bracket_fields(a.symbol, b.symbol)};
}

DiffOp1 ad_operator(const Algebroid& a, const FreeElement& alpha) {
    const std::size_t p = a.ngens();
    SubmoduleBasis rels = relation_basis(a.carrier);
    PolyMatrix endo;
    endo.reserve(p);
    for (std::size_t i = 0; i < p; ++i)
        endo.push_back(bracket_eval(a, alpha, FreeElement::unit(a.ring, p, i), &rels).components);
    return DiffOp1{a.carrier, std::move(endo), a.anchor_field(alpha)};
}

std::optional<std::string> lie_derivation_witness(const DiffOp1& op, const Algebroid& a,
                                                  unsigned degree_bound) {
    if (op.ngens() != a.ngens() || !same_ring(op.module.ring, a.ring))
        throw Error("diffop", "is_lie_derivation: module mismatch");
    const std::size_t p = a.ngens();
    SubmoduleBasis rels = relation_basis(a.carrier);
    for (const auto& expo : exponents_up_to(a.ring->nvars(), degree_bound)) {
        Poly g = Poly::monomial(a.ring, expo, Rational(1));
        for (std::size_t i = 0; i < p; ++i) {
            FreeElement u = FreeElement::unit(a.ring, p, i).scaled(g);
            for (std::size_t j = 0; j < p; ++j) {
                FreeElement v = FreeElement::unit(a.ring, p, j);
                FreeElement lhs = apply_diffop(op, bracket_eval(a, u, v, &rels), &rels);
                FreeElement rhs = bracket_eval(a, apply_diffop(op, u, &rels), v, &rels) +
                                  bracket_eval(a, u, apply_diffop(op, v, &rels), &rels);
                if (!rels.reduce(lhs - rhs).is_zero())
                    return "(" + g.str() + ", e" + std::to_string(i) + ", e" + std::to_string(j) +
                           ")";
            }
        }
    }
    return std::nullopt;
}

bool is_lie_derivation(const DiffOp1& op, const Algebroid& a, unsigned degree_bound) {
    return !lie_derivation_witness(op, a, degree_bound).has_value();
}

FreeElement jacobian_image(const RingMap& f, const FreeElement& v) {
    if (!same_ring(v.ring, f.target)) throw ring_mismatch("jacobian_image");
    FreeElement out(f.target, f.source->nvars());
    for (std::size_t i = 0; i < f.source->nvars(); ++i)
        for (std::size_t j = 0; j < f.target->nvars(); ++j) {
            if (v[j].is_zero()) continue;
            out[i] += v[j] * f.images[i].derivative(j);
        }
    return out;
}

DiffOp1 pullback_diffop(const DiffOp1& op, const RingMap& f, const FreeElement& compat,
                        const PresentedModule& pulled_module) {
    FreeElement pulled_symbol = apply_ring_map(f, op.symbol);
    if (!(jacobian_image(f, compat) == pulled_symbol))
        throw Error("incompatible-symbol", "Df(compat) differs from the pulled-back symbol");
    return DiffOp1{pulled_module, apply_ring_map(f, op.endo), compat};
}

// ---------------------------------------------------------------------------
// Symmetry fields of a foliation by curves.

std::vector<FreeElement> symmetry_fields(const FreeElement& v, unsigned degree_bound,
                                         const SmoothProjection* relative) {
    const RingPtr& ring = v.ring;
    const std::size_t n = ring->nvars();
    if (v.rank() != n) throw Error("diffop", "symmetry_fields: v must be a tangent field");
    if (v.is_zero()) throw Error("diffop", "symmetry_fields: v must be nonzero");
    SubmoduleBasis span(ring, n, {v});

    std::vector<std::size_t> comps;
    if (relative) {
        comps = relative->fiber;
        std::sort(comps.begin(), comps.end());
    } else {
        for (std::size_t k = 0; k < n; ++k) comps.push_back(k);
    }
    std::vector<Exponents> monos = exponents_up_to(n, degree_bound);

    std::vector<FreeElement> basis_fields;
    std::vector<FreeElement> residues;
    SupportIndex support;
    for (std::size_t k : comps) {
        for (const auto& e : monos) {
            FreeElement field(ring, n);
            field[k] = Poly::monomial(ring, e, Rational(1));
            FreeElement res = span.reduce(lie_bracket_fields(field, v));
            support.collect(res);
            basis_fields.push_back(std::move(field));
            residues.push_back(std::move(res));
        }
    }

    QMatrix m(support.size(), basis_fields.size());
    for (std::size_t c = 0; c < residues.size(); ++c) {
        std::vector<Rational> col = support.coords(residues[c]);
        for (std::size_t r = 0; r < col.size(); ++r) m.at(r, c) = col[r];
    }

    std::vector<FreeElement> out;
    for (const auto& vec : nullspace(m)) {
        FreeElement field(ring, n);
        for (std::size_t c = 0; c < vec.size(); ++c) {
            if (vec[c].is_zero()) continue;
            field += basis_fields[c].scaled(Poly::constant(ring, vec[c]));
        }
        out.push_back(std::move(field));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Degree-bounded check of the operator-pullback isomorphism.

namespace {

// Operator pairs (endo, symbol) on a module with p generators over `ring` are
// flattened into free elements of rank p*p + nsym.
struct OpSpace {
    RingPtr ring;
    std::size_t p;
    std::size_t nsym;
    std::size_t rank() const { return p * p + nsym; }

    FreeElement flatten(const PolyMatrix& endo, const FreeElement& symbol) const {
        FreeElement out(ring, rank());
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < p; ++j) out[i * p + j] = endo[i][j];
        for (std::size_t k = 0; k < nsym; ++k) out[p * p + k] = symbol[k];
        return out;
    }
};

// Basis of well-defined degree-bounded operator pairs, as flattened elements.
std::vector<FreeElement> well_defined_ops(const OpSpace& space, const PolyMatrix& relations,
                                          unsigned degree_bound) {
    std::vector<FreeElement> units;
    for (const auto& expo : exponents_up_to(space.ring->nvars(), degree_bound))
        for (std::size_t c = 0; c < space.rank(); ++c) {
            FreeElement e(space.ring, space.rank());
            e[c] = Poly::monomial(space.ring, expo, Rational(1));
            units.push_back(std::move(e));
        }
    if (relations.empty()) return units;

    // Linear constraints: each unit op must send every relation row to zero
    // modulo the relations. Normal form against a fixed basis is linear.
    SubmoduleBasis rels(space.ring, space.p,
                        [&] {
                            std::vector<FreeElement> rows;
                            for (const auto& r : relations) {
                                FreeElement e(space.ring, space.p);
                                for (std::size_t i = 0; i < r.size(); ++i) e[i] = r[i];
                                rows.push_back(std::move(e));
                            }
                            return rows;
                        }());
    PresentedModule coord_module = PresentedModule::free_module(space.ring, space.p);
    coord_module.relations = relations;

    SupportIndex support;
    std::vector<std::vector<FreeElement>> residues(units.size());
    for (std::size_t u = 0; u < units.size(); ++u) {
        PolyMatrix endo = zero_matrix(space.ring, space.p, space.p);
        FreeElement symbol(space.ring, space.ring->nvars());
        for (std::size_t i = 0; i < space.p; ++i)
            for (std::size_t j = 0; j < space.p; ++j) endo[i][j] = units[u][i * space.p + j];
        for (std::size_t k = 0; k < space.nsym; ++k) symbol[k] = units[u][space.p * space.p + k];
        DiffOp1 op{coord_module, std::move(endo), std::move(symbol)};
        for (const auto& row : relations) {
            FreeElement coeffs(space.ring, space.p);
            for (std::size_t i = 0; i < row.size(); ++i) coeffs[i] = row[i];
            FreeElement res = rels.reduce(raw_apply(op, coeffs));
            support.collect(res);
            residues[u].push_back(std::move(res));
        }
    }
    std::size_t eqs_per_unit = relations.size();
    QMatrix m(support.size() * eqs_per_unit, units.size());
    for (std::size_t u = 0; u < units.size(); ++u)
        for (std::size_t r = 0; r < eqs_per_unit; ++r) {
            std::vector<Rational> col = support.coords(residues[u][r]);
            for (std::size_t k = 0; k < col.size(); ++k)
                m.at(r * support.size() + k, u) = col[k];
        }
    std::vector<FreeElement> out;
    for (const auto& vec : nullspace(m)) {
        FreeElement e(space.ring, space.rank());
        for (std::size_t c = 0; c < vec.size(); ++c) {
            if (vec[c].is_zero()) continue;
            e += units[c].scaled(Poly::constant(space.ring, vec[c]));
        }
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace

PullbackIsoReport diffop_pullback_iso_check(const PresentedModule& f_module,
                                            const SmoothProjection* proj, const RingMap& base_map,
                                            unsigned degree_bound) {
    PullbackIsoReport report;
    report.degree_bound = degree_bound;
    const RingPtr& xring = f_module.ring;
    const std::size_t n = xring->nvars();
    const std::size_t p = f_module.ngens();

    // Hypothesis: the non-locally-free locus has (relative) codimension >= 2.
    Ideal nonfree = fitting_ideal(f_module, f_module.generic_rank());
    if (is_unit_ideal(nonfree)) {
        report.hypothesis_ok = true;
        report.detail = "module locally free; ";
    } else {
        Ideal cut = nonfree;
        std::size_t fiber_dim = n;
        if (proj) {
            for (std::size_t b : proj->base) cut.generators.push_back(Poly::variable(xring, b));
            fiber_dim = proj->nfiber();
        }
        int dim = ideal_dimension(cut);
        int codim = static_cast<int>(fiber_dim) - dim;
        report.hypothesis_ok = codim >= 2;
        report.detail = "non-free locus relative codimension " + std::to_string(codim) + "; ";
        if (!report.hypothesis_ok) return report;
    }

    // Classify the base change.
    bool is_identity = same_ring(base_map.source, base_map.target);
    if (is_identity) {
        RingMap id = RingMap::identity(base_map.source);
        for (std::size_t i = 0; i < base_map.images.size(); ++i)
            if (!(base_map.images[i] == id.images[i])) is_identity = false;
    }
    bool is_point = base_map.target->nvars() == 0;
    if (!is_identity && !is_point)
        throw Error("unsupported",
                    "pullback check supports identity and point base changes only");

    // Total map X -> Y and the kernel generators of the induced surjection.
    std::vector<std::string> yvars;
    if (proj)
        for (std::size_t i : proj->fiber) yvars.push_back(xring->var(i));
    else
        yvars = xring->vars();
    if (is_identity && proj)
        for (std::size_t i : proj->base) yvars.push_back(xring->var(i));
    RingPtr yring = Ring::make(yvars);

    std::vector<Poly> images;
    std::vector<Poly> kernel_gens;  // in O_X, degree <= 1
    for (std::size_t i = 0; i < n; ++i) {
        if (proj && proj->is_base_index(i)) {
            std::size_t b = 0;
            while (proj->base[b] != i) ++b;
            if (is_identity) {
                images.push_back(Poly::parse(xring->var(i), yring));
            } else {
                Rational c = base_map.images[b].constant_value();
                images.push_back(Poly::constant(yring, c));
                kernel_gens.push_back(Poly::variable(xring, i) -
                                      Poly::constant(xring, c));
            }
        } else {
            images.push_back(Poly::parse(xring->var(i), yring));
        }
    }
    RingMap total = RingMap::make(xring, yring, std::move(images));

    OpSpace xspace{xring, p, n};
    OpSpace yspace{yring, p, yring->nvars()};
    std::vector<FreeElement> vx = well_defined_ops(xspace, f_module.relations, degree_bound);
    PolyMatrix yrels = apply_ring_map(total, f_module.relations);
    std::vector<FreeElement> vy = well_defined_ops(yspace, yrels, degree_bound);

    // Domain of the fibered product: pairs (psi, v) with f*(symbol psi) = Df(v).
    std::vector<FreeElement> tangent_units;
    for (const auto& expo : exponents_up_to(yring->nvars(), degree_bound))
        for (std::size_t k = 0; k < yring->nvars(); ++k) {
            FreeElement e(yring, yring->nvars());
            e[k] = Poly::monomial(yring, expo, Rational(1));
            tangent_units.push_back(std::move(e));
        }

    auto symbol_of = [&](const FreeElement& flat) {
        FreeElement s(xring, n);
        for (std::size_t k = 0; k < n; ++k) s[k] = flat[p * p + k];
        return s;
    };

    // Constraint residues live in O_Y^n.
    SupportIndex cons_support;
    std::vector<FreeElement> cons_cols;
    for (const auto& psi : vx) cons_cols.push_back(apply_ring_map(total, symbol_of(psi)));
    for (const auto& v : tangent_units) cons_cols.push_back(-jacobian_image(total, v));
    for (const auto& c : cons_cols) cons_support.collect(c);
    QMatrix cons(cons_support.size(), cons_cols.size());
    for (std::size_t c = 0; c < cons_cols.size(); ++c) {
        std::vector<Rational> col = cons_support.coords(cons_cols[c]);
        for (std::size_t r = 0; r < col.size(); ++r) cons.at(r, c) = col[r];
    }
    std::vector<std::vector<Rational>> dom = nullspace(cons);

    // Canonical map into flattened operators over Y.
    auto map_to_y = [&](const std::vector<Rational>& coords) {
        FreeElement out(yring, yspace.rank());
        for (std::size_t c = 0; c < vx.size(); ++c) {
            if (coords[c].is_zero()) continue;
            FreeElement sub = apply_ring_map(total, vx[c]);
            // Re-shape: the symbol block of the image is Df-compatible v, not
            // the substituted X-symbol; only the endo block carries over.
            FreeElement shaped(yring, yspace.rank());
            for (std::size_t i = 0; i < p * p; ++i) shaped[i] = sub[i];
            out += shaped.scaled(Poly::constant(yring, coords[c]));
        }
        for (std::size_t t = 0; t < tangent_units.size(); ++t) {
            const Rational& w = coords[vx.size() + t];
            if (w.is_zero()) continue;
            for (std::size_t k = 0; k < yring->nvars(); ++k)
                out[p * p + k] += tangent_units[t][k].scaled(w);
        }
        return out;
    };

    SupportIndex yop_support;
    std::vector<FreeElement> images_y;
    for (const auto& d : dom) images_y.push_back(map_to_y(d));
    for (const auto& e : images_y) yop_support.collect(e);
    for (const auto& e : vy) yop_support.collect(e);

    QMatrix image_matrix(images_y.size(), yop_support.size());
    for (std::size_t r = 0; r < images_y.size(); ++r) {
        std::vector<Rational> row = yop_support.coords(images_y[r]);
        for (std::size_t c = 0; c < row.size(); ++c) image_matrix.at(r, c) = row[c];
    }

    // Trivial kernel: kernel-ideal multiples of lower-degree operators paired
    // with the zero tangent field. Exact for degree <= 1 kernel generators.
    std::vector<FreeElement> trivial;
    if (!kernel_gens.empty() && degree_bound > 0) {
        std::vector<FreeElement> vx_low = well_defined_ops(xspace, f_module.relations,
                                                           degree_bound - 1);
        for (const auto& kg : kernel_gens)
            for (const auto& chi : vx_low) trivial.push_back(chi.scaled(kg));
    }
    SupportIndex xop_support;
    for (const auto& e : vx) xop_support.collect(e);
    for (const auto& e : trivial) xop_support.collect(e);
    QMatrix trivial_matrix(trivial.size(), xop_support.size());
    for (std::size_t r = 0; r < trivial.size(); ++r) {
        std::vector<Rational> row = xop_support.coords(trivial[r]);
        for (std::size_t c = 0; c < row.size(); ++c) trivial_matrix.at(r, c) = row[c];
    }
    std::size_t dim_trivial = rank(trivial_matrix);
    std::size_t rank_c = rank(image_matrix);
    std::size_t dim_dom = dom.size();
    report.injective = (dim_dom - rank_c) == dim_trivial;

    report.surjective = true;
    for (const auto& target : vy) {
        if (!in_row_span(image_matrix, yop_support.coords(target))) {
            report.surjective = false;
            break;
        }
    }
    report.detail += "dim dom " + std::to_string(dim_dom) + ", rank " + std::to_string(rank_c) +
                     ", trivial " + std::to_string(dim_trivial) + ", target dim " +
                     std::to_string(vy.size());
    return report;
}

}  // namespace algb
