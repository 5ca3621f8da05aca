#include "witt.hpp"

#include <map>
#include <mutex>
#include <utility>

namespace lcft::witt {

namespace {

// sparse multivariate polynomials over Z, exponent vector keyed
using Mono = std::vector<unsigned>;
using Poly = std::map<Mono, Integer>;

Poly poly_var(std::size_t nvars, std::size_t idx) {
    Mono m(nvars, 0);
    m[idx] = 1;
    return {{m, Integer(1)}};
}

void poly_add_into(Poly& a, const Poly& b, const Integer& scale = Integer(1)) {
    for (const auto& [m, c] : b) {
        Integer& slot = a[m];
        slot += c * scale;
        if (slot == 0) a.erase(m);
    }
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            Mono m(ma.size());
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            Integer& slot = r[m];
            slot += ca * cb;
            if (slot == 0) r.erase(m);
        }
    return r;
}

Poly poly_pow(const Poly& a, unsigned long e) {
    Poly r = {{Mono(a.empty() ? 0 : a.begin()->first.size(), 0), Integer(1)}};
    if (e == 0) return r;
    Poly base = a;
    // iterative multiply keeps intermediate supports small for these laws
    Poly acc = base;
    for (unsigned long i = 1; i < e; ++i) acc = poly_mul(acc, base);
    return acc;
}

Poly poly_divexact(const Poly& a, const Integer& d) {
    Poly r;
    for (const auto& [m, c] : a) {
        if (c % d != 0) throw error("witt laws: ghost recursion not integral");
        r[m] = c / d;
    }
    return r;
}

// ghost polynomial w_i over one variable set, expressed in `nvars` variables
// with the set starting at `offset`
Poly ghost(long p, long i, std::size_t nvars, std::size_t offset) {
    Poly r;
    for (long j = 0; j <= i; ++j) {
        Poly t = poly_pow(poly_var(nvars, offset + j), pow_int(p, i - j).convert_to<unsigned long>());
        poly_add_into(r, t, pow_int(p, j));
    }
    return r;
}

CompiledPoly compile(const Poly& poly, long p, std::size_t nvars) {
    CompiledPoly out;
    out.vars = nvars;
    for (const auto& [m, c] : poly) {
        long cr = static_cast<long>(mod_floor(c, Integer(p)));
        if (cr == 0) continue;
        CompiledPoly::Term t;
        t.coeff = cr;
        t.exp = m;
        t.exp.resize(nvars, 0);
        out.terms.push_back(std::move(t));
    }
    return out;
}

WittLaws compute_laws(long p, long n) {
    WittLaws L;
    L.p = p;
    L.n = n;
    const std::size_t nv2 = static_cast<std::size_t>(2 * n);  // x_0..x_{n-1}, y_0..y_{n-1}
    const std::size_t nv1 = static_cast<std::size_t>(n);
    std::vector<Poly> S, P, N;
    for (long i = 0; i < n; ++i) {
        // sum law: p^i S_i = w_i(x) + w_i(y) - sum_{j<i} p^j S_j^{p^(i-j)}
        Poly rhs = ghost(p, i, nv2, 0);
        poly_add_into(rhs, ghost(p, i, nv2, nv1));
        for (long j = 0; j < i; ++j) {
            Poly t = poly_pow(S[j], pow_int(p, i - j).convert_to<unsigned long>());
            poly_add_into(rhs, t, -pow_int(p, j));
        }
        S.push_back(poly_divexact(rhs, pow_int(p, i)));

        // product law: p^i P_i = w_i(x) w_i(y) - sum_{j<i} p^j P_j^{p^(i-j)}
        Poly rhp = poly_mul(ghost(p, i, nv2, 0), ghost(p, i, nv2, nv1));
        for (long j = 0; j < i; ++j) {
            Poly t = poly_pow(P[j], pow_int(p, i - j).convert_to<unsigned long>());
            poly_add_into(rhp, t, -pow_int(p, j));
        }
        P.push_back(poly_divexact(rhp, pow_int(p, i)));

        // negation law: p^i N_i = -w_i(x) - sum_{j<i} p^j N_j^{p^(i-j)}
        Poly rhn;
        poly_add_into(rhn, ghost(p, i, nv1, 0), Integer(-1));
        for (long j = 0; j < i; ++j) {
            Poly t = poly_pow(N[j], pow_int(p, i - j).convert_to<unsigned long>());
            poly_add_into(rhn, t, -pow_int(p, j));
        }
        N.push_back(poly_divexact(rhn, pow_int(p, i)));

        L.sum.push_back(compile(S[i], p, nv2));
        L.product.push_back(compile(P[i], p, nv2));
        L.negation.push_back(compile(N[i], p, nv1));
    }
    return L;
}

std::mutex laws_mutex;
std::map<std::pair<long, long>, std::unique_ptr<WittLaws>> laws_cache;

// evaluate a compiled law on digit codes; power tables per variable
gf::Elem eval(const CompiledPoly& cp, const gf::Field& f, const std::vector<gf::Elem>& vars) {
    // max exponent per variable
    std::vector<unsigned> maxe(cp.vars, 0);
    for (const auto& t : cp.terms)
        for (std::size_t v = 0; v < cp.vars; ++v) maxe[v] = std::max(maxe[v], t.exp[v]);
    std::vector<std::vector<gf::Elem>> pw(cp.vars);
    for (std::size_t v = 0; v < cp.vars; ++v) {
        pw[v].resize(maxe[v] + 1);
        pw[v][0] = f.one();
        for (unsigned e = 1; e <= maxe[v]; ++e) pw[v][e] = f.mul(pw[v][e - 1], vars[v]);
    }
    gf::Elem acc = 0;
    for (const auto& t : cp.terms) {
        gf::Elem prod = f.from_int(t.coeff);
        for (std::size_t v = 0; v < cp.vars; ++v)
            if (t.exp[v]) prod = f.mul(prod, pw[v][t.exp[v]]);
        acc = f.add(acc, prod);
    }
    return acc;
}

void check_compatible(const WittVector& a, const WittVector& b) {
    if (a.ring().get() != b.ring().get() || a.length() != b.length())
        throw structure_error("witt: mismatched ring or length");
}

}  // namespace

const WittLaws& laws(long p, long n) {
    std::lock_guard<std::mutex> lock(laws_mutex);
    auto key = std::make_pair(p, n);
    auto it = laws_cache.find(key);
    if (it == laws_cache.end())
        it = laws_cache.emplace(key, std::make_unique<WittLaws>(compute_laws(p, n))).first;
    return *it->second;
}

WittVector::WittVector(std::shared_ptr<const gf::PerfRing> ring, long length)
    : ring_(std::move(ring)), n_(length) {
    if (n_ < 1) throw structure_error("WittVector: length must be >= 1");
    d_.assign(ring_->count(), std::vector<gf::Elem>(n_, 0));
}

WittVector witt_zero(std::shared_ptr<const gf::PerfRing> ring, long n) {
    return WittVector(std::move(ring), n);
}

WittVector witt_one(std::shared_ptr<const gf::PerfRing> ring, long n) {
    WittVector w(ring, n);
    for (std::size_t c = 0; c < ring->count(); ++c) w.set_digit(c, 0, ring->components[c]->one());
    return w;
}

WittVector witt_add(const WittVector& a, const WittVector& b) {
    check_compatible(a, b);
    const auto& ring = *a.ring();
    const WittLaws& L = laws(ring.characteristic(), a.length());
    WittVector r(a.ring(), a.length());
    for (std::size_t c = 0; c < ring.count(); ++c) {
        const gf::Field& f = *ring.components[c];
        std::vector<gf::Elem> vars(2 * a.length());
        for (long i = 0; i < a.length(); ++i) {
            vars[i] = a.digit(c, i);
            vars[a.length() + i] = b.digit(c, i);
        }
        for (long i = 0; i < a.length(); ++i) r.set_digit(c, i, eval(L.sum[i], f, vars));
    }
    return r;
}

WittVector witt_mul(const WittVector& a, const WittVector& b) {
    check_compatible(a, b);
    const auto& ring = *a.ring();
    const WittLaws& L = laws(ring.characteristic(), a.length());
    WittVector r(a.ring(), a.length());
    for (std::size_t c = 0; c < ring.count(); ++c) {
        const gf::Field& f = *ring.components[c];
        std::vector<gf::Elem> vars(2 * a.length());
        for (long i = 0; i < a.length(); ++i) {
            vars[i] = a.digit(c, i);
            vars[a.length() + i] = b.digit(c, i);
        }
        for (long i = 0; i < a.length(); ++i) r.set_digit(c, i, eval(L.product[i], f, vars));
    }
    return r;
}

WittVector witt_neg(const WittVector& a) {
    const auto& ring = *a.ring();
    const WittLaws& L = laws(ring.characteristic(), a.length());
    WittVector r(a.ring(), a.length());
    for (std::size_t c = 0; c < ring.count(); ++c) {
        const gf::Field& f = *ring.components[c];
        std::vector<gf::Elem> vars(a.length());
        for (long i = 0; i < a.length(); ++i) vars[i] = a.digit(c, i);
        for (long i = 0; i < a.length(); ++i) r.set_digit(c, i, eval(L.negation[i], f, vars));
    }
    return r;
}

WittVector teichmuller(std::shared_ptr<const gf::PerfRing> ring, const std::vector<gf::Elem>& x,
                       long n) {
    if (x.size() != ring->count()) throw structure_error("teichmuller: component count");
    WittVector w(ring, n);
    for (std::size_t c = 0; c < x.size(); ++c) w.set_digit(c, 0, x[c]);
    return w;
}

WittVector frobenius(const WittVector& a) {
    // digitwise p-th power over a perfect coefficient ring
    WittVector r(a.ring(), a.length());
    for (std::size_t c = 0; c < a.ring()->count(); ++c) {
        const gf::Field& f = *a.ring()->components[c];
        for (long i = 0; i < a.length(); ++i)
            r.set_digit(c, i, f.pow(a.digit(c, i), f.p()));
    }
    return r;
}

WittVector verschiebung(const WittVector& a) {
    WittVector r(a.ring(), a.length());
    for (std::size_t c = 0; c < a.ring()->count(); ++c)
        for (long i = 1; i < a.length(); ++i) r.set_digit(c, i, a.digit(c, i - 1));
    return r;
}

zq::ZqRing::El to_coefficient_ring(const WittVector& a, std::size_t component,
                                   const zq::ZqRing& ring) {
    const gf::Field& f = *a.ring()->components[component];
    if (!ring.residue_field()->equal_desc(f) || ring.precision() < a.length())
        throw structure_error("to_coefficient_ring: incompatible target");
    zq::ZqRing::El acc = ring.zero();
    for (long i = 0; i < a.length(); ++i) {
        gf::Elem d = a.digit(component, i);
        for (long j = 0; j < i; ++j) d = f.inv_frobenius(d);  // a_i^{p^-i}
        acc = ring.add(acc, ring.mul_pk(ring.teichmuller(d), i));
    }
    return acc;
}

WittVector from_coefficient_ring(std::shared_ptr<const gf::PerfRing> ring, std::size_t component,
                                 const zq::ZqRing& zring, const zq::ZqRing::El& z) {
    const gf::Field& f = *ring->components[component];
    long n = zring.precision();
    WittVector w(ring, n);
    auto ds = zring.digits(z);
    for (long i = 0; i < n; ++i) {
        gf::Elem d = ds[i];
        for (long j = 0; j < i; ++j) d = f.frobenius(d);  // b_i^{p^i}
        w.set_digit(component, i, d);
    }
    return w;
}

long ProfiniteModule::length() const {
    long l = 0;
    for (long x : cyclic_lengths) l = std::max(l, x);
    return l;
}

std::vector<Integer> GreenbergPoints::classify(const std::vector<WittVector>& element) const {
    if (element.size() != mod.cyclic_lengths.size())
        throw structure_error("GreenbergPoints::classify: factor count");
    std::vector<Integer> ambient;
    for (std::size_t i = 0; i < element.size(); ++i) {
        if (element[i].length() != mod.cyclic_lengths[i])
            throw structure_error("GreenbergPoints::classify: wrong truncation length");
        for (std::size_t c = 0; c < ring->count(); ++c) {
            auto el = to_coefficient_ring(element[i], c, *coeff[i][c]);
            for (const auto& coord : el.c) ambient.push_back(coord);
        }
    }
    return group.classify(ambient);
}

GreenbergPoints greenberg_points(const ProfiniteModule& m,
                                 std::shared_ptr<const gf::PerfRing> r) {
    if (m.k->p() != r->characteristic())
        throw structure_error("greenberg_points: characteristic mismatch");
    GreenbergPoints out;
    out.mod = m;
    out.ring = r;
    std::vector<Integer> inv;
    for (std::size_t i = 0; i < m.cyclic_lengths.size(); ++i) {
        long l = m.cyclic_lengths[i];
        std::vector<zq::ZqPtr> row;
        for (std::size_t c = 0; c < r->count(); ++c) {
            row.push_back(std::make_shared<zq::ZqRing>(r->components[c], l));
            Integer pl = pow_int(r->characteristic(), l);
            for (long d = 0; d < r->components[c]->degree(); ++d) inv.push_back(pl);
        }
        out.coeff.push_back(std::move(row));
    }
    out.group = abgroup::FinAbGroup::from_invariant_factors(inv);
    return out;
}

}  // namespace lcft::witt
