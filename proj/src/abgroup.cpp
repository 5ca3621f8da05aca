#include "abgroup.hpp"

#include <algorithm>
#include <cstdlib>

namespace lcft::abgroup {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<Integer>& d) {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows) {
    if (rows.empty()) return IntMatrix();
    IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
    return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<std::vector<Integer>>& cols) {
    if (cols.empty()) return IntMatrix();
    IntMatrix m(cols[0].size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < cols[j].size(); ++i) m.at(i, j) = cols[j][i];
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Integer& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                const Integer& b = o.at(k, j);
                if (b != 0) r.at(i, j) += a * b;
            }
        }
    return r;
}

std::vector<Integer> IntMatrix::apply(const std::vector<Integer>& v) const {
    std::vector<Integer> r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            const Integer& a = at(i, j);
            if (a != 0 && v[j] != 0) r[i] += a * v[j];
        }
    return r;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

IntMatrix IntMatrix::hstack(const IntMatrix& o) const {
    IntMatrix r(rows_, cols_ + o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
    }
    return r;
}

std::vector<Integer> IntMatrix::column(std::size_t j) const {
    std::vector<Integer> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
}

std::vector<Integer> IntMatrix::row(std::size_t i) const {
    std::vector<Integer> r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
}

bool IntMatrix::is_zero() const {
    for (const auto& x : e_)
        if (x != 0) return false;
    return true;
}

namespace {

struct SnfWork {
    IntMatrix d;
    std::optional<IntMatrix> u, u_inv, v, v_inv;

    void row_swap(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < d.cols(); ++j) std::swap(d.at(a, j), d.at(b, j));
        if (u)
            for (std::size_t j = 0; j < u->cols(); ++j) std::swap(u->at(a, j), u->at(b, j));
        if (u_inv)
            for (std::size_t i = 0; i < u_inv->rows(); ++i)
                std::swap(u_inv->at(i, a), u_inv->at(i, b));
    }
    // row a -= q * row b
    void row_sub(std::size_t a, std::size_t b, const Integer& q) {
        if (q == 0) return;
        for (std::size_t j = 0; j < d.cols(); ++j) {
            const Integer& s = d.at(b, j);
            if (s != 0) d.at(a, j) -= q * s;
        }
        if (u)
            for (std::size_t j = 0; j < u->cols(); ++j) {
                const Integer& s = u->at(b, j);
                if (s != 0) u->at(a, j) -= q * s;
            }
        if (u_inv)  // inverse update: col b += q * col a
            for (std::size_t i = 0; i < u_inv->rows(); ++i) {
                const Integer& s = u_inv->at(i, a);
                if (s != 0) u_inv->at(i, b) += q * s;
            }
    }
    void row_negate(std::size_t a) {
        for (std::size_t j = 0; j < d.cols(); ++j) d.at(a, j) = -d.at(a, j);
        if (u)
            for (std::size_t j = 0; j < u->cols(); ++j) u->at(a, j) = -u->at(a, j);
        if (u_inv)
            for (std::size_t i = 0; i < u_inv->rows(); ++i) u_inv->at(i, a) = -u_inv->at(i, a);
    }
    void col_swap(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < d.rows(); ++i) std::swap(d.at(i, a), d.at(i, b));
        if (v)
            for (std::size_t i = 0; i < v->rows(); ++i) std::swap(v->at(i, a), v->at(i, b));
        if (v_inv)
            for (std::size_t j = 0; j < v_inv->cols(); ++j)
                std::swap(v_inv->at(a, j), v_inv->at(b, j));
    }
    // col a -= q * col b
    void col_sub(std::size_t a, std::size_t b, const Integer& q) {
        if (q == 0) return;
        for (std::size_t i = 0; i < d.rows(); ++i) {
            const Integer& s = d.at(i, b);
            if (s != 0) d.at(i, a) -= q * s;
        }
        if (v)
            for (std::size_t i = 0; i < v->rows(); ++i) {
                const Integer& s = v->at(i, b);
                if (s != 0) v->at(i, a) -= q * s;
            }
        if (v_inv)  // inverse update: row b += q * row a
            for (std::size_t j = 0; j < v_inv->cols(); ++j) {
                const Integer& s = v_inv->at(a, j);
                if (s != 0) v_inv->at(b, j) += q * s;
            }
    }
};

}  // namespace

SnfResult snf(const IntMatrix& m, const SnfOptions& opt) {
    const std::size_t nr = m.rows(), nc = m.cols();
    SnfWork w;
    w.d = m;
    if (opt.want_u) w.u = IntMatrix::identity(nr);
    if (opt.want_u_inv) w.u_inv = IntMatrix::identity(nr);
    if (opt.want_v) w.v = IntMatrix::identity(nc);
    if (opt.want_v_inv) w.v_inv = IntMatrix::identity(nc);

    const std::size_t steps = std::min(nr, nc);
    std::size_t t = 0;
    for (; t < steps; ++t) {
        // smallest nonzero absolute value in the trailing submatrix
        std::size_t pi = t, pj = t;
        Integer best = 0;
        for (std::size_t i = t; i < nr; ++i)
            for (std::size_t j = t; j < nc; ++j) {
                const Integer& x = w.d.at(i, j);
                if (x == 0) continue;
                Integer a = abs(x);
                if (best == 0 || a < best) {
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (best == 0) break;
        w.row_swap(t, pi);
        w.col_swap(t, pj);

        for (;;) {
            bool clean = true;
            // clear the pivot column
            for (std::size_t i = 0; i < nr; ++i) {
                if (i == t || w.d.at(i, t) == 0) continue;
                Integer q = w.d.at(i, t) / w.d.at(t, t);
                w.row_sub(i, t, q);
                if (w.d.at(i, t) != 0) {  // remainder strictly smaller: promote it
                    w.row_swap(t, i);
                    clean = false;
                    break;
                }
            }
            if (!clean) continue;
            // clear the pivot row
            for (std::size_t j = 0; j < nc; ++j) {
                if (j == t || w.d.at(t, j) == 0) continue;
                Integer q = w.d.at(t, j) / w.d.at(t, t);
                w.col_sub(j, t, q);
                if (w.d.at(t, j) != 0) {
                    w.col_swap(t, j);
                    clean = false;
                    break;
                }
            }
            if (!clean) continue;
            // pivot must divide the rest of the submatrix for the chain
            bool fixed = false;
            for (std::size_t i = t + 1; i < nr && !fixed; ++i)
                for (std::size_t j = t + 1; j < nc && !fixed; ++j)
                    if (w.d.at(i, j) % w.d.at(t, t) != 0) {
                        w.row_sub(t, i, Integer(-1));  // row t += row i
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (w.d.at(t, t) < 0) w.row_negate(t);
    }

    SnfResult r;
    r.d = std::move(w.d);
    r.u = std::move(w.u);
    r.u_inv = std::move(w.u_inv);
    r.v = std::move(w.v);
    r.v_inv = std::move(w.v_inv);
    r.rank = 0;
    for (std::size_t i = 0; i < steps; ++i)
        if (r.d.at(i, i) != 0) ++r.rank;
    return r;
}

IntMatrix kernel_basis(const IntMatrix& m) {
    SnfOptions opt;
    opt.want_v = true;
    SnfResult s = snf(m, opt);
    const std::size_t n = m.cols();
    IntMatrix k(n, n - s.rank);
    for (std::size_t j = s.rank; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) k.at(i, j - s.rank) = s.v->at(i, j);
    return k;
}

std::optional<std::vector<Integer>> solve(const IntMatrix& m, const std::vector<Integer>& b) {
    SnfOptions opt;
    opt.want_u = true;
    opt.want_v = true;
    SnfResult s = snf(m, opt);
    std::vector<Integer> ub = s.u->apply(b);
    std::vector<Integer> y(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Integer di = (i < std::min(m.rows(), m.cols())) ? s.d.at(i, i) : Integer(0);
        if (di == 0) {
            if (ub[i] != 0) return std::nullopt;
        } else {
            if (i < m.cols()) {
                if (ub[i] % di != 0) return std::nullopt;
                y[i] = ub[i] / di;
            } else if (ub[i] != 0) {
                return std::nullopt;
            }
        }
    }
    return s.v->apply(y);
}

std::size_t FinAbGroup::free_rank() const {
    std::size_t r = 0;
    for (const auto& d : inv_)
        if (d == 0) ++r;
    return r;
}

Integer FinAbGroup::order() const {
    Integer o = 1;
    for (const auto& d : inv_) {
        if (d == 0) return 0;
        o *= d;
    }
    return o;
}

FinAbGroup FinAbGroup::cokernel(std::size_t generators, const IntMatrix& relations) {
    FinAbGroup g;
    g.gens_ = generators;
    g.rel_ = relations;
    if (generators == 0) return g;
    SnfOptions opt;
    opt.want_u = true;
    opt.want_u_inv = true;
    SnfResult s = snf(relations, opt);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < generators; ++i) {
        Integer di = (i < std::min(relations.rows(), relations.cols())) ? s.d.at(i, i) : Integer(0);
        if (di != 1) keep.push_back(i);
    }
    g.inv_.reserve(keep.size());
    for (auto i : keep)
        g.inv_.push_back(i < std::min(relations.rows(), relations.cols()) ? s.d.at(i, i)
                                                                          : Integer(0));
    g.to_can_ = IntMatrix(keep.size(), generators);
    g.from_can_ = IntMatrix(generators, keep.size());
    for (std::size_t k = 0; k < keep.size(); ++k) {
        for (std::size_t j = 0; j < generators; ++j) g.to_can_.at(k, j) = s.u->at(keep[k], j);
        for (std::size_t i = 0; i < generators; ++i) g.from_can_.at(i, k) = s.u_inv->at(i, keep[k]);
    }
    return g;
}

FinAbGroup FinAbGroup::from_invariant_factors(const std::vector<Integer>& inv) {
    return cokernel(inv.size(), IntMatrix::diagonal(inv));
}

std::vector<Integer> FinAbGroup::reduce(std::vector<Integer> c) const {
    for (std::size_t i = 0; i < inv_.size(); ++i)
        if (inv_[i] != 0) c[i] = mod_floor(c[i], inv_[i]);
    return c;
}

std::vector<Integer> FinAbGroup::classify(const std::vector<Integer>& ambient) const {
    if (ambient.size() != gens_) throw structure_error("classify: wrong coordinate count");
    return reduce(to_can_.apply(ambient));
}

std::vector<Integer> FinAbGroup::representative(const std::vector<Integer>& canonical) const {
    if (canonical.size() != inv_.size()) throw structure_error("representative: wrong rank");
    return from_can_.apply(canonical);
}

std::vector<Integer> FinAbGroup::add(const std::vector<Integer>& a,
                                     const std::vector<Integer>& b) const {
    std::vector<Integer> c(inv_.size());
    for (std::size_t i = 0; i < inv_.size(); ++i) c[i] = a[i] + b[i];
    return reduce(std::move(c));
}

std::vector<Integer> FinAbGroup::neg(const std::vector<Integer>& a) const {
    std::vector<Integer> c(inv_.size());
    for (std::size_t i = 0; i < inv_.size(); ++i) c[i] = -a[i];
    return reduce(std::move(c));
}

std::vector<Integer> FinAbGroup::scale(const Integer& k, const std::vector<Integer>& a) const {
    std::vector<Integer> c(inv_.size());
    for (std::size_t i = 0; i < inv_.size(); ++i) c[i] = k * a[i];
    return reduce(std::move(c));
}

bool FinAbGroup::is_zero_class(const std::vector<Integer>& canonical) const {
    auto c = reduce(canonical);
    for (const auto& x : c)
        if (x != 0) return false;
    return true;
}

std::vector<std::vector<Integer>> FinAbGroup::elements(std::size_t cap) const {
    Integer o = order();
    if (o == 0 || o > Integer(cap)) throw error("elements: group too large or infinite");
    std::vector<std::vector<Integer>> out;
    std::vector<Integer> cur(inv_.size(), 0);
    for (;;) {
        out.push_back(cur);
        std::size_t i = 0;
        for (; i < inv_.size(); ++i) {
            cur[i] += 1;
            if (cur[i] < inv_[i]) break;
            cur[i] = 0;
        }
        if (i == inv_.size()) break;
    }
    return out;
}

FinAbGroup FinAbGroup::quotient_by(const std::vector<std::vector<Integer>>& ambient_gens) const {
    IntMatrix extra = IntMatrix::from_columns(ambient_gens);
    if (ambient_gens.empty()) return cokernel(gens_, rel_);
    if (extra.rows() != gens_) throw structure_error("quotient_by: wrong coordinate count");
    return cokernel(gens_, rel_.hstack(extra));
}

FinAbGroup cokernel(const IntMatrix& m) { return FinAbGroup::cokernel(m.rows(), m); }

FinAbGroup subgroup_quotient(const FinAbGroup& amb, const std::vector<std::vector<Integer>>& gens) {
    return amb.quotient_by(gens);
}

bool iso_check(const FinAbGroup& a, const FinAbGroup& b) {
    return a.invariant_factors() == b.invariant_factors();
}

AbHom::AbHom(FinAbGroup domain, FinAbGroup codomain, IntMatrix matrix_on_canonical)
    : dom_(std::move(domain)), cod_(std::move(codomain)), m_(std::move(matrix_on_canonical)) {
    if (m_.rows() != cod_.rank() || m_.cols() != dom_.rank())
        throw structure_error("AbHom: matrix shape does not match canonical ranks");
}

bool AbHom::well_defined() const {
    for (std::size_t i = 0; i < dom_.rank(); ++i) {
        const Integer& d = dom_.invariant_factors()[i];
        if (d == 0) continue;
        std::vector<Integer> col = m_.column(i);
        if (!cod_.is_zero_class(cod_.scale(d, cod_.reduce(col)))) return false;
    }
    return true;
}

std::vector<Integer> AbHom::apply(const std::vector<Integer>& canonical) const {
    return cod_.reduce(m_.apply(canonical));
}

AbHom AbHom::compose(const AbHom& inner) const {
    return AbHom(inner.domain(), cod_, m_ * inner.matrix());
}

std::vector<std::vector<Integer>> AbHom::kernel_generators() const {
    // lattice {x : M x lies in the codomain relation lattice}
    std::vector<Integer> diag;
    std::vector<std::size_t> finite_idx;
    for (std::size_t j = 0; j < cod_.rank(); ++j)
        if (cod_.invariant_factors()[j] != 0) {
            diag.push_back(cod_.invariant_factors()[j]);
            finite_idx.push_back(j);
        }
    IntMatrix rel(cod_.rank(), finite_idx.size());
    for (std::size_t k = 0; k < finite_idx.size(); ++k) rel.at(finite_idx[k], k) = diag[k];
    IntMatrix big = m_.hstack(rel);
    IntMatrix ker = kernel_basis(big);
    std::vector<std::vector<Integer>> out;
    for (std::size_t j = 0; j < ker.cols(); ++j) {
        std::vector<Integer> x(dom_.rank());
        bool nonzero = false;
        for (std::size_t i = 0; i < dom_.rank(); ++i) {
            x[i] = ker.at(i, j);
            if (x[i] != 0) nonzero = true;
        }
        if (nonzero) out.push_back(dom_.reduce(x));
    }
    return out;
}

std::vector<std::vector<Integer>> AbHom::image_generators() const {
    std::vector<std::vector<Integer>> out;
    for (std::size_t i = 0; i < dom_.rank(); ++i) out.push_back(cod_.reduce(m_.column(i)));
    return out;
}

FinAbGroup AbHom::kernel_group() const {
    // kernel lattice basis, then relations of the domain expressed in that basis
    std::vector<Integer> diag;
    std::vector<std::size_t> finite_idx;
    for (std::size_t j = 0; j < cod_.rank(); ++j)
        if (cod_.invariant_factors()[j] != 0) finite_idx.push_back(j);
    IntMatrix rel(cod_.rank(), finite_idx.size());
    for (std::size_t k = 0; k < finite_idx.size(); ++k)
        rel.at(finite_idx[k], k) = cod_.invariant_factors()[finite_idx[k]];
    IntMatrix big = m_.hstack(rel);
    IntMatrix ker = kernel_basis(big);
    IntMatrix basis(dom_.rank(), ker.cols());
    for (std::size_t j = 0; j < ker.cols(); ++j)
        for (std::size_t i = 0; i < dom_.rank(); ++i) basis.at(i, j) = ker.at(i, j);
    // relations: syzygies among the spanning columns, plus the domain
    // relations d_i e_i expressed in those columns
    std::vector<std::vector<Integer>> rel_cols;
    IntMatrix syz = kernel_basis(basis);
    for (std::size_t j = 0; j < syz.cols(); ++j) rel_cols.push_back(syz.column(j));
    for (std::size_t i = 0; i < dom_.rank(); ++i) {
        if (dom_.invariant_factors()[i] == 0) continue;
        std::vector<Integer> b(dom_.rank(), 0);
        b[i] = dom_.invariant_factors()[i];
        auto y = solve(basis, b);
        if (!y) throw error("kernel_group: domain relation not in kernel lattice");
        rel_cols.push_back(*y);
    }
    IntMatrix relmat = rel_cols.empty() ? IntMatrix(basis.cols(), 0)
                                        : IntMatrix::from_columns(rel_cols);
    return FinAbGroup::cokernel(basis.cols(), relmat);
}

Integer AbHom::image_order() const { return subgroup_order(cod_, image_generators()); }

bool AbHom::is_zero() const {
    for (std::size_t i = 0; i < dom_.rank(); ++i)
        if (!cod_.is_zero_class(cod_.reduce(m_.column(i)))) return false;
    return true;
}

Integer subgroup_order(const FinAbGroup& g, const std::vector<std::vector<Integer>>& gens) {
    Integer total = g.order();
    if (total == 0) throw error("subgroup_order: ambient group is infinite");
    FinAbGroup can = FinAbGroup::from_invariant_factors(g.invariant_factors());
    // canonical coordinates of `can` match those of `g` (already normalized)
    std::vector<std::vector<Integer>> amb;
    for (const auto& v : gens) amb.push_back(v);
    FinAbGroup q = can.quotient_by(amb);
    return total / q.order();
}

bool subgroup_contains(const FinAbGroup& g, const std::vector<std::vector<Integer>>& gens,
                       const std::vector<Integer>& x) {
    std::vector<std::vector<Integer>> cols = gens;
    for (std::size_t j = 0; j < g.rank(); ++j) {
        if (g.invariant_factors()[j] == 0) continue;
        std::vector<Integer> r(g.rank(), 0);
        r[j] = g.invariant_factors()[j];
        cols.push_back(r);
    }
    if (cols.empty()) {
        for (const auto& c : x)
            if (c != 0) return false;
        return true;
    }
    return solve(IntMatrix::from_columns(cols), x).has_value();
}

}  // namespace lcft::abgroup
