#include "algb/linalg.hpp"

#include <algorithm>

#include "algb/error.hpp"

namespace algb {

std::vector<std::size_t> rref(QMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t p = r;
        while (p < m.rows && m.at(p, c).is_zero()) ++p;
        if (p == m.rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
        Rational inv = m.at(r, c).inverse();
        for (std::size_t j = c; j < m.cols; ++j) m.at(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            Rational f = m.at(i, c);
            for (std::size_t j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank(QMatrix m) { return rref(m).size(); }

std::vector<std::vector<Rational>> nullspace(const QMatrix& m) {
    QMatrix e = m;
    std::vector<std::size_t> pivots = rref(e);
    std::vector<bool> is_pivot(m.cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    std::vector<std::vector<Rational>> basis;
    for (std::size_t free_c = 0; free_c < m.cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        std::vector<Rational> v(m.cols, Rational(0));
        v[free_c] = Rational(1);
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -e.at(i, free_c);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Rational>> solve(const QMatrix& m, const std::vector<Rational>& b) {
    if (b.size() != m.rows) throw Error("linalg", "solve: rhs length mismatch");
    QMatrix e(m.rows, m.cols + 1);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) e.at(i, j) = m.at(i, j);
        e.at(i, m.cols) = b[i];
    }
    std::vector<std::size_t> pivots = rref(e);
    if (!pivots.empty() && pivots.back() == m.cols) return std::nullopt;  // inconsistent
    std::vector<Rational> x(m.cols, Rational(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = e.at(i, m.cols);
    return x;
}

bool in_row_span(const QMatrix& m, const std::vector<Rational>& v) {
    if (v.size() != m.cols) throw Error("linalg", "in_row_span: length mismatch");
    QMatrix e(m.rows + 1, m.cols);
    e.a.assign(m.a.begin(), m.a.end());
    e.a.insert(e.a.end(), v.begin(), v.end());
    return rank(std::move(e)) == rank(m);
}

void SupportIndex::collect(const FreeElement& e) {
    for (std::size_t c = 0; c < e.rank(); ++c)
        for (const auto& [expo, coeff] : e[c].terms()) {
            auto key = std::make_pair(c, expo);
            if (!pos_.count(key)) {
                std::size_t next = 0;
                // Renumber in sorted key order so the index is independent of
                // collection order.
                pos_[key] = 0;
                for (auto& [k, v] : pos_) v = next++;
            }
        }
}

std::vector<Rational> SupportIndex::coords(const FreeElement& e) const {
    std::vector<Rational> out(pos_.size(), Rational(0));
    for (std::size_t c = 0; c < e.rank(); ++c)
        for (const auto& [expo, coeff] : e[c].terms()) {
            auto it = pos_.find(std::make_pair(c, expo));
            if (it == pos_.end()) throw Error("linalg", "coords: support not collected");
            out[it->second] = coeff;
        }
    return out;
}

PolyMatrix identity_matrix(const RingPtr& ring, std::size_t n) {
    PolyMatrix m(n, std::vector<Poly>(n, Poly(ring)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = Poly::constant(ring, Rational(1));
    return m;
}

PolyMatrix zero_matrix(const RingPtr& ring, std::size_t rows, std::size_t cols) {
    return PolyMatrix(rows, std::vector<Poly>(cols, Poly(ring)));
}

PolyMatrix matrix_product(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.empty() || b.empty()) return {};
    std::size_t n = a.size(), k = a[0].size(), mcols = b[0].size();
    if (k != b.size()) throw Error("linalg", "matrix product shape mismatch");
    RingPtr ring = a[0][0].ring();
    PolyMatrix r = zero_matrix(ring, n, mcols);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (std::size_t j = 0; j < mcols; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

PolyMatrix apply_ring_map(const RingMap& f, const PolyMatrix& m) {
    PolyMatrix r;
    r.reserve(m.size());
    for (const auto& row : m) {
        std::vector<Poly> out;
        out.reserve(row.size());
        for (const auto& p : row) out.push_back(apply_ring_map(f, p));
        r.push_back(std::move(out));
    }
    return r;
}

namespace {

// Laplace expansion along the first remaining column; fine at the matrix
// sizes that occur here (presentations and anchors are small).
Poly det_rec(const PolyMatrix& m, const std::vector<std::size_t>& rows,
             const std::vector<std::size_t>& cols, const RingPtr& ring) {
    std::size_t n = rows.size();
    if (n == 0) return Poly::constant(ring, Rational(1));
    if (n == 1) return m[rows[0]][cols[0]];
    Poly acc(ring);
    std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
    for (std::size_t i = 0; i < n; ++i) {
        const Poly& e = m[rows[i]][cols[0]];
        if (e.is_zero()) continue;
        std::vector<std::size_t> rr;
        rr.reserve(n - 1);
        for (std::size_t k = 0; k < n; ++k)
            if (k != i) rr.push_back(rows[k]);
        std::vector<std::size_t> cc(cols.begin() + 1, cols.end());
        Poly minor = det_rec(m, rr, cc, ring);
        if (i % 2 == 0)
            acc += e * minor;
        else
            acc -= e * minor;
    }
    return acc;
}

void subsets_rec(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                 std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i + (k - cur.size()) <= n; ++i) {
        cur.push_back(i);
        subsets_rec(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    subsets_rec(n, k, 0, cur, out);
    return out;
}

}  // namespace

Poly determinant(const PolyMatrix& m) {
    if (m.empty()) throw Error("linalg", "determinant of empty matrix needs a ring");
    if (m.size() != m[0].size()) throw Error("linalg", "determinant of non-square matrix");
    RingPtr ring = m[0][0].ring();
    std::vector<std::size_t> idx(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) idx[i] = i;
    return det_rec(m, idx, idx, ring);
}

std::vector<Poly> minors(const PolyMatrix& m, std::size_t k) {
    std::vector<Poly> out;
    if (m.empty()) return out;
    std::size_t nr = m.size(), nc = m[0].size();
    if (k > nr || k > nc) return out;
    RingPtr ring = m[0][0].ring();
    if (k == 0) {
        out.push_back(Poly::constant(ring, Rational(1)));
        return out;
    }
    for (const auto& rs : subsets(nr, k))
        for (const auto& cs : subsets(nc, k)) out.push_back(det_rec(m, rs, cs, ring));
    return out;
}

std::size_t generic_rank(const PolyMatrix& m) {
    if (m.empty() || m[0].empty()) return 0;
    std::size_t bound = std::min(m.size(), m[0].size());
    for (std::size_t t = bound; t > 0; --t) {
        for (const auto& rs : subsets(m.size(), t)) {
            for (const auto& cs : subsets(m[0].size(), t)) {
                if (!det_rec(m, rs, cs, m[0][0].ring()).is_zero()) return t;
            }
        }
    }
    return 0;
}

}  // namespace algb
