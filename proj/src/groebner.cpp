#include "algb/groebner.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "algb/error.hpp"

namespace algb {

// ---------------------------------------------------------------------------
// MonomialOrder

int MonomialOrder::compare_expo(const Exponents& a, const Exponents& b) const {
    if (a == b) return 0;
    if (kind == OrderKind::Lex) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
        }
        return 0;
    }
    // grevlex: total degree, then the last variable where they differ decides
    // in reverse.
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
}

int MonomialOrder::compare_position(std::size_t ca, std::size_t cb) const {
    if (ca == cb) return 0;
    std::size_t ra = ca, rb = cb;
    if (!position_priority.empty()) {
        for (std::size_t k = 0; k < position_priority.size(); ++k) {
            if (position_priority[k] == ca) ra = k;
            if (position_priority[k] == cb) rb = k;
        }
    }
    // Lower precedence rank means a larger basis vector (e_0 > e_1 > ...).
    return ra < rb ? 1 : -1;
}

int MonomialOrder::compare(const Exponents& ea, std::size_t ca, const Exponents& eb,
                           std::size_t cb) const {
    if (ext == ModuleExt::TermOverPosition) {
        int c = compare_expo(ea, eb);
        return c != 0 ? c : compare_position(ca, cb);
    }
    int c = compare_position(ca, cb);
    return c != 0 ? c : compare_expo(ea, eb);
}

// ---------------------------------------------------------------------------
// FreeElement

FreeElement::FreeElement(std::vector<Poly> comps) {
    if (comps.empty()) throw Error("free-element", "use FreeElement(ring, 0) for rank-0 elements");
    ring = comps[0].ring();
    for (const auto& p : comps)
        if (!same_ring(p.ring(), ring)) throw ring_mismatch("free element");
    components = std::move(comps);
}

bool FreeElement::is_zero() const {
    return std::all_of(components.begin(), components.end(),
                       [](const Poly& p) { return p.is_zero(); });
}

FreeElement FreeElement::operator-() const {
    FreeElement r(ring, rank());
    for (std::size_t i = 0; i < rank(); ++i) r.components[i] = -components[i];
    return r;
}

FreeElement& FreeElement::operator+=(const FreeElement& o) {
    if (rank() != o.rank()) throw Error("free-element", "rank mismatch in addition");
    for (std::size_t i = 0; i < rank(); ++i) components[i] += o.components[i];
    return *this;
}

FreeElement& FreeElement::operator-=(const FreeElement& o) {
    if (rank() != o.rank()) throw Error("free-element", "rank mismatch in subtraction");
    for (std::size_t i = 0; i < rank(); ++i) components[i] -= o.components[i];
    return *this;
}

FreeElement FreeElement::scaled(const Poly& p) const {
    FreeElement r(ring, rank());
    for (std::size_t i = 0; i < rank(); ++i) r.components[i] = components[i] * p;
    return r;
}

FreeElement FreeElement::unit(const RingPtr& ring, std::size_t rank, std::size_t i) {
    FreeElement r(ring, rank);
    r.components.at(i) = Poly::constant(ring, Rational(1));
    return r;
}

std::string FreeElement::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < rank(); ++i) {
        if (i) os << ", ";
        os << components[i].str();
    }
    os << ")";
    return os.str();
}

FreeElement apply_ring_map(const RingMap& f, const FreeElement& e) {
    FreeElement r(f.target, e.rank());
    for (std::size_t i = 0; i < e.rank(); ++i) r.components[i] = apply_ring_map(f, e.components[i]);
    return r;
}

Poly field_apply(const FreeElement& v, const Poly& g) {
    if (v.rank() != v.ring->nvars()) throw Error("field", "vector field rank != nvars");
    Poly out(v.ring);
    for (std::size_t i = 0; i < v.rank(); ++i) {
        if (v[i].is_zero()) continue;
        out += v[i] * g.derivative(i);
    }
    return out;
}

FreeElement lie_bracket_fields(const FreeElement& v, const FreeElement& w) {
    if (v.rank() != w.rank()) throw Error("field", "bracket of fields of different rank");
    FreeElement r(v.ring, v.rank());
    for (std::size_t k = 0; k < v.rank(); ++k)
        r.components[k] = field_apply(v, w[k]) - field_apply(w, v[k]);
    return r;
}

// ---------------------------------------------------------------------------
// Engine representation: sorted term lists over module monomials.

namespace {

struct ModMono {
    std::size_t comp;
    Exponents expo;
    bool operator==(const ModMono& o) const { return comp == o.comp && expo == o.expo; }
};

struct Term {
    ModMono m;
    Rational c;
};

// Terms sorted strictly descending under the active order.
using Elem = std::vector<Term>;

// Comparison context. Components >= split form a lower block that every
// split-block monomial dominates; this is the elimination order that makes
// lifts and syzygies drop out of the graph computation. split == npos means
// no blocks.
struct Ctx {
    const MonomialOrder* ord;
    std::size_t split = static_cast<std::size_t>(-1);

    int compare(const ModMono& a, const ModMono& b) const {
        bool la = a.comp >= split, lb = b.comp >= split;
        if (la != lb) return la ? -1 : 1;
        if (!la) return ord->compare(a.expo, a.comp, b.expo, b.comp);
        // Lower block: position-over-term with identity precedence; the
        // internal order of the syzygy block is a free choice.
        if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
        return ord->compare_expo(a.expo, b.expo);
    }
};

bool mono_divides(const ModMono& d, const ModMono& m) {
    if (d.comp != m.comp) return false;
    for (std::size_t i = 0; i < d.expo.size(); ++i)
        if (d.expo[i] > m.expo[i]) return false;
    return true;
}

Exponents expo_quotient(const Exponents& m, const Exponents& d) {
    Exponents q(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) q[i] = m[i] - d[i];
    return q;
}

Exponents expo_lcm(const Exponents& a, const Exponents& b) {
    Exponents l(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) l[i] = std::max(a[i], b[i]);
    return l;
}

Exponents expo_sum(const Exponents& a, const Exponents& b) {
    Exponents s(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
    return s;
}

bool expo_is_zero(const Exponents& e) {
    return std::all_of(e.begin(), e.end(), [](unsigned x) { return x == 0; });
}

Elem elem_from_free(const FreeElement& e, const Ctx& ctx) {
    Elem out;
    for (std::size_t comp = 0; comp < e.rank(); ++comp)
        for (const auto& [expo, c] : e[comp].terms()) out.push_back({{comp, expo}, c});
    std::sort(out.begin(), out.end(),
              [&](const Term& a, const Term& b) { return ctx.compare(a.m, b.m) > 0; });
    return out;
}

FreeElement elem_to_free(const Elem& e, const RingPtr& ring, std::size_t rank) {
    FreeElement out(ring, rank);
    for (const auto& t : e) out[t.m.comp].add_term(t.m.expo, t.c);
    return out;
}

// a + c * x^shift * b, merged. shift/c applied to b.
Elem elem_axpy(const Elem& a, const Rational& c, const Exponents& shift, const Elem& b,
               const Ctx& ctx) {
    Elem out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    bool noshift = expo_is_zero(shift);
    auto shifted = [&](const Term& t) {
        return ModMono{t.m.comp, noshift ? t.m.expo : expo_sum(t.m.expo, shift)};
    };
    while (i < a.size() || j < b.size()) {
        if (j == b.size()) {
            out.push_back(a[i++]);
            continue;
        }
        ModMono bm = shifted(b[j]);
        if (i == a.size()) {
            Rational v = c * b[j].c;
            if (!v.is_zero()) out.push_back({std::move(bm), std::move(v)});
            ++j;
            continue;
        }
        int cmp = ctx.compare(a[i].m, bm);
        if (cmp > 0) {
            out.push_back(a[i++]);
        } else if (cmp < 0) {
            Rational v = c * b[j].c;
            if (!v.is_zero()) out.push_back({std::move(bm), std::move(v)});
            ++j;
        } else {
            Rational v = a[i].c + c * b[j].c;
            if (!v.is_zero()) out.push_back({a[i].m, std::move(v)});
            ++i;
            ++j;
        }
    }
    return out;
}

// Full normal form; the reducer is always the first basis element (in basis
// order) whose lead divides the current term.
Elem elem_normal_form(Elem work, const std::vector<Elem>& basis, const Ctx& ctx) {
    Elem rem;
    while (!work.empty()) {
        const Term& t = work.front();
        const Elem* reducer = nullptr;
        for (const auto& b : basis) {
            if (!b.empty() && mono_divides(b.front().m, t.m)) {
                reducer = &b;
                break;
            }
        }
        if (!reducer) {
            rem.push_back(t);
            work.erase(work.begin());
            continue;
        }
        Rational c = -(t.c / reducer->front().c);
        Exponents shift = expo_quotient(t.m.expo, reducer->front().m.expo);
        work = elem_axpy(work, c, shift, *reducer, ctx);
    }
    return rem;
}

Elem spoly(const Elem& f, const Elem& g, const Ctx& ctx) {
    const Term& lf = f.front();
    const Term& lg = g.front();
    Exponents l = expo_lcm(lf.m.expo, lg.m.expo);
    Elem a = elem_axpy(Elem{}, lf.c.inverse(), expo_quotient(l, lf.m.expo), f, ctx);
    return elem_axpy(a, -lg.c.inverse(), expo_quotient(l, lg.m.expo), g, ctx);
}

struct PairKey {
    Exponents lcm;
    std::size_t comp, i, j;
};

struct Engine {
    Ctx ctx;
    std::vector<Elem> g;
    std::set<std::pair<std::size_t, std::size_t>> done;

    struct PairLess {
        const Engine* e;
        bool operator()(const PairKey& a, const PairKey& b) const {
            int c = e->ctx.ord->compare_expo(a.lcm, b.lcm);
            if (c != 0) return c < 0;  // smaller lcm first (normal strategy)
            return std::tie(a.comp, a.i, a.j) < std::tie(b.comp, b.i, b.j);
        }
    };
    std::set<PairKey, PairLess> pairs;

    explicit Engine(Ctx c) : ctx(c), pairs(PairLess{this}) {}

    void add_pairs(std::size_t idx) {
        for (std::size_t k = 0; k < idx; ++k) {
            if (g[k].empty() || g[k].front().m.comp != g[idx].front().m.comp) continue;
            pairs.insert({expo_lcm(g[k].front().m.expo, g[idx].front().m.expo),
                          g[idx].front().m.comp, k, idx});
        }
    }

    bool chain_criterion(const PairKey& p) const {
        for (std::size_t k = 0; k < g.size(); ++k) {
            if (k == p.i || k == p.j || g[k].empty()) continue;
            const ModMono& lk = g[k].front().m;
            if (lk.comp != p.comp) continue;
            bool div = true;
            for (std::size_t v = 0; v < p.lcm.size(); ++v)
                if (lk.expo[v] > p.lcm[v]) {
                    div = false;
                    break;
                }
            if (!div) continue;
            auto key = [](std::size_t a, std::size_t b) { return std::minmax(a, b); };
            if (done.count(key(p.i, k)) && done.count(key(p.j, k))) return true;
        }
        return false;
    }

    void run(std::vector<Elem> input) {
        for (auto& e : input) {
            Elem r = elem_normal_form(std::move(e), g, ctx);
            if (r.empty()) continue;
            g.push_back(std::move(r));
            add_pairs(g.size() - 1);
        }
        while (!pairs.empty()) {
            PairKey p = *pairs.begin();
            pairs.erase(pairs.begin());
            done.insert(std::minmax(p.i, p.j));
            if (chain_criterion(p)) continue;
            Elem s = elem_normal_form(spoly(g[p.i], g[p.j], ctx), g, ctx);
            if (s.empty()) continue;
            g.push_back(std::move(s));
            add_pairs(g.size() - 1);
        }
    }
};

// Interreduction of a graph-row set: remove rows whose upper lead is divisible
// by another kept row's lead, tail-reduce until stable, normalize monic.
// `lead_block(row)` must stay invariant under the reductions performed.
void interreduce(std::vector<Elem>& rows, const Ctx& ctx) {
    std::sort(rows.begin(), rows.end(),
              [&](const Elem& a, const Elem& b) { return ctx.compare(a.front().m, b.front().m) < 0; });
    std::vector<Elem> kept;
    for (auto& r : rows) {
        bool redundant = false;
        for (const auto& k : kept)
            if (mono_divides(k.front().m, r.front().m)) {
                redundant = true;
                break;
            }
        if (!redundant) kept.push_back(std::move(r));
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < kept.size(); ++i) {
            std::vector<Elem> others;
            others.reserve(kept.size() - 1);
            for (std::size_t j = 0; j < kept.size(); ++j)
                if (j != i) others.push_back(kept[j]);
            Elem r = elem_normal_form(kept[i], others, ctx);
            if (!(r == kept[i])) {
                kept[i] = std::move(r);
                changed = true;
            }
        }
    }
    for (auto& r : kept) {
        Rational inv = r.front().c.inverse();
        for (auto& t : r) t.c *= inv;
    }
    std::sort(kept.begin(), kept.end(),
              [&](const Elem& a, const Elem& b) { return ctx.compare(a.front().m, b.front().m) < 0; });
    rows = std::move(kept);
}

bool operator==(const Term& a, const Term& b) { return a.m == b.m && a.c == b.c; }

}  // namespace

// ---------------------------------------------------------------------------
// Public entry points

GroebnerResult groebner_with_lift(const std::vector<FreeElement>& gens, std::size_t rank,
                                  const RingPtr& ring, const MonomialOrder& order) {
    const std::size_t k = gens.size();
    Ctx graph_ctx{&order, rank};
    Ctx plain_ctx{&order};

    std::vector<Elem> input;
    input.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        if (gens[i].rank() != rank) throw Error("groebner", "generator rank mismatch");
        FreeElement graph(ring, rank + k);
        for (std::size_t c = 0; c < rank; ++c) graph[c] = gens[i][c];
        graph[rank + i] = Poly::constant(ring, Rational(1));
        input.push_back(elem_from_free(graph, graph_ctx));
    }

    Engine eng(graph_ctx);
    eng.run(std::move(input));

    std::vector<Elem> basis_rows, syz_rows;
    for (auto& e : eng.g) {
        if (e.empty()) continue;
        if (e.front().m.comp < rank)
            basis_rows.push_back(std::move(e));
        else
            syz_rows.push_back(std::move(e));
    }
    interreduce(basis_rows, graph_ctx);
    interreduce(syz_rows, graph_ctx);

    GroebnerResult out;
    for (const auto& row : basis_rows) {
        FreeElement full = elem_to_free(row, ring, rank + k);
        FreeElement head(ring, rank);
        std::vector<Poly> lift_row;
        for (std::size_t c = 0; c < rank; ++c) head[c] = full[c];
        for (std::size_t c = 0; c < k; ++c) lift_row.push_back(full[rank + c]);
        out.basis.push_back(std::move(head));
        out.lift.push_back(std::move(lift_row));
    }
    for (const auto& row : syz_rows) {
        FreeElement full = elem_to_free(row, ring, rank + k);
        std::vector<Poly> syz_row;
        for (std::size_t c = 0; c < k; ++c) syz_row.push_back(full[rank + c]);
        out.syzygies.push_back(std::move(syz_row));
    }
    return out;
}

std::vector<FreeElement> groebner_basis(const std::vector<FreeElement>& gens, std::size_t rank,
                                        const RingPtr& ring, const MonomialOrder& order) {
    return groebner_with_lift(gens, rank, ring, order).basis;
}

FreeElement normal_form(const FreeElement& e, const std::vector<FreeElement>& basis,
                        const MonomialOrder& order) {
    Ctx ctx{&order};
    std::vector<Elem> b;
    b.reserve(basis.size());
    for (const auto& x : basis) {
        if (x.rank() != e.rank()) throw Error("groebner", "normal form rank mismatch");
        Elem el = elem_from_free(x, ctx);
        if (!el.empty()) b.push_back(std::move(el));
    }
    return elem_to_free(elem_normal_form(elem_from_free(e, ctx), b, ctx), e.ring, e.rank());
}

PolyMatrix syzygy_module(const std::vector<FreeElement>& gens, std::size_t rank,
                         const RingPtr& ring, const MonomialOrder& order) {
    return groebner_with_lift(gens, rank, ring, order).syzygies;
}

// ---------------------------------------------------------------------------
// SubmoduleBasis

SubmoduleBasis::SubmoduleBasis(RingPtr ring, std::size_t rank, std::vector<FreeElement> gens,
                               MonomialOrder order)
    : ring_(std::move(ring)), rank_(rank), gens_(std::move(gens)), order_(order) {
    result_ = groebner_with_lift(gens_, rank_, ring_, order_);
    // Graph rows for lift(): basis rows followed by syzygy rows, in the
    // canonical interreduced order.
    for (std::size_t i = 0; i < result_.basis.size(); ++i) {
        FreeElement row(ring_, rank_ + gens_.size());
        for (std::size_t c = 0; c < rank_; ++c) row[c] = result_.basis[i][c];
        for (std::size_t c = 0; c < gens_.size(); ++c) row[rank_ + c] = result_.lift[i][c];
        graph_.push_back(std::move(row));
    }
    for (const auto& srow : result_.syzygies) {
        FreeElement row(ring_, rank_ + gens_.size());
        for (std::size_t c = 0; c < gens_.size(); ++c) row[rank_ + c] = srow[c];
        graph_.push_back(std::move(row));
    }
}

FreeElement SubmoduleBasis::reduce(const FreeElement& e) const {
    return normal_form(e, result_.basis, order_);
}

std::optional<std::vector<Poly>> SubmoduleBasis::lift(const FreeElement& e) const {
    if (e.rank() != rank_) throw Error("groebner", "lift rank mismatch");
    Ctx ctx{&order_, rank_};
    std::vector<Elem> rows;
    rows.reserve(graph_.size());
    for (const auto& r : graph_) {
        Elem el = elem_from_free(r, ctx);
        if (!el.empty()) rows.push_back(std::move(el));
    }
    FreeElement padded(ring_, rank_ + gens_.size());
    for (std::size_t c = 0; c < rank_; ++c) padded[c] = e[c];
    Elem rem = elem_normal_form(elem_from_free(padded, ctx), rows, ctx);
    FreeElement r = elem_to_free(rem, ring_, rank_ + gens_.size());
    for (std::size_t c = 0; c < rank_; ++c)
        if (!r[c].is_zero()) return std::nullopt;
    std::vector<Poly> coeffs;
    coeffs.reserve(gens_.size());
    for (std::size_t c = 0; c < gens_.size(); ++c) coeffs.push_back(-r[rank_ + c]);
    return coeffs;
}

}  // namespace algb
