#include "zq.hpp"

namespace lcft::zq {

ZqRing::ZqRing(gf::FieldPtr k, long prec)
    : k_(std::move(k)), prec_(prec), m_(k_->degree()) {
    if (prec < 1) throw structure_error("ZqRing: precision must be >= 1");
    pM_ = pow_int(k_->p(), prec);
    mod_.resize(m_);
    for (long i = 0; i < m_; ++i) mod_[i] = k_->modulus_tail()[i];
    if (k_->size() <= 1024) {
        teich_cache_.resize(k_->size());
        for (gf::Elem a = 0; a < k_->size(); ++a) {
            // start from the coefficient lift, iterate q-powers to the fixed point
            El z{std::vector<Integer>(m_)};
            auto cs = k_->coeffs(a);
            for (long i = 0; i < m_; ++i) z.c[i] = cs[i];
            long steps = (prec_ - 1 + m_ - 1) / m_ + 1;
            for (long s = 0; s < steps; ++s) z = pow(z, Integer(k_->size()));
            teich_cache_[a] = z;
        }
    }
}

ZqRing::El ZqRing::one() const {
    El r = zero();
    r.c[0] = 1;
    return r;
}

ZqRing::El ZqRing::from_int(const Integer& a) const {
    El r = zero();
    r.c[0] = mod_floor(a, pM_);
    return r;
}

bool ZqRing::is_zero(const El& a) const {
    for (const auto& x : a.c)
        if (x != 0) return false;
    return true;
}

ZqRing::El ZqRing::add(const El& a, const El& b) const {
    El r = zero();
    for (long i = 0; i < m_; ++i) {
        r.c[i] = a.c[i] + b.c[i];
        if (r.c[i] >= pM_) r.c[i] -= pM_;
    }
    return r;
}

ZqRing::El ZqRing::sub(const El& a, const El& b) const {
    El r = zero();
    for (long i = 0; i < m_; ++i) {
        r.c[i] = a.c[i] - b.c[i];
        if (r.c[i] < 0) r.c[i] += pM_;
    }
    return r;
}

ZqRing::El ZqRing::neg(const El& a) const { return sub(zero(), a); }

ZqRing::El ZqRing::reduce(std::vector<Integer> raw) const {
    // reduce degree >= m_ terms with the monic modulus lift, coefficients mod p^M
    for (long d = static_cast<long>(raw.size()) - 1; d >= m_; --d) {
        Integer c = raw[d];
        if (c == 0) continue;
        raw[d] = 0;
        for (long i = 0; i < m_; ++i)
            if (mod_[i] != 0) raw[d - m_ + i] -= c * mod_[i];
    }
    El r = zero();
    for (long i = 0; i < m_; ++i) r.c[i] = mod_floor(raw[i], pM_);
    return r;
}

ZqRing::El ZqRing::mul(const El& a, const El& b) const {
    std::vector<Integer> raw(2 * m_);
    for (long i = 0; i < m_; ++i) {
        if (a.c[i] == 0) continue;
        for (long j = 0; j < m_; ++j)
            if (b.c[j] != 0) raw[i + j] += a.c[i] * b.c[j];
    }
    return reduce(std::move(raw));
}

ZqRing::El ZqRing::mul_int(const El& a, const Integer& s) const {
    El r = zero();
    for (long i = 0; i < m_; ++i) r.c[i] = mod_floor(a.c[i] * s, pM_);
    return r;
}

ZqRing::El ZqRing::pow(const El& a, const Integer& e) const {
    if (e < 0) throw structure_error("ZqRing::pow: negative exponent");
    El acc = one(), base = a;
    Integer n = e;
    while (n > 0) {
        if ((n & 1) != 0) acc = mul(acc, base);
        base = mul(base, base);
        n >>= 1;
    }
    return acc;
}

gf::Elem ZqRing::residue(const El& a) const {
    std::vector<long> cs(m_);
    long p = k_->p();
    for (long i = 0; i < m_; ++i) cs[i] = static_cast<long>(a.c[i] % p);
    return k_->from_coeffs(cs);
}

long ZqRing::val(const El& a) const {
    long p = k_->p();
    long best = prec_;
    for (long i = 0; i < m_; ++i) {
        if (a.c[i] == 0) continue;
        long v = 0;
        Integer x = a.c[i];
        while (x % p == 0) {
            x /= p;
            ++v;
        }
        best = std::min(best, v);
        if (best == 0) break;
    }
    return best;
}

ZqRing::El ZqRing::mul_pk(const El& a, long k) const {
    Integer pk = pow_int(k_->p(), k);
    return mul_int(a, pk);
}

ZqRing::El ZqRing::divexact_pk(const El& a, long k) const {
    Integer pk = pow_int(k_->p(), k);
    El r = zero();
    for (long i = 0; i < m_; ++i) {
        if (a.c[i] % pk != 0) throw error("ZqRing::divexact_pk: inexact");
        r.c[i] = a.c[i] / pk;
    }
    return r;
}

ZqRing::El ZqRing::truncate(const El& a, long digits) const {
    if (digits >= prec_) return a;
    if (digits <= 0) return zero();
    Integer pk = pow_int(k_->p(), digits);
    El r = zero();
    for (long i = 0; i < m_; ++i) r.c[i] = a.c[i] % pk;
    return r;
}

ZqRing::El ZqRing::teichmuller(gf::Elem a) const {
    if (!teich_cache_.empty()) return teich_cache_[a];
    El z = zero();
    auto cs = k_->coeffs(a);
    for (long i = 0; i < m_; ++i) z.c[i] = cs[i];
    long steps = (prec_ - 1 + m_ - 1) / m_ + 1;
    for (long s = 0; s < steps; ++s) z = pow(z, Integer(k_->size()));
    return z;
}

std::vector<gf::Elem> ZqRing::digits(const El& a) const {
    std::vector<gf::Elem> out(prec_);
    El z = a;
    for (long i = 0; i < prec_; ++i) {
        gf::Elem d = residue(z);
        out[i] = d;
        z = sub(z, teichmuller(d));
        // the difference is divisible by p; shift one digit down
        El shifted = zero();
        Integer p(k_->p());
        for (long j = 0; j < m_; ++j) {
            if (z.c[j] % p != 0) throw error("ZqRing::digits: drift");
            shifted.c[j] = z.c[j] / p;
        }
        z = shifted;
    }
    return out;
}

ZqRing::El ZqRing::from_digits(const std::vector<gf::Elem>& d) const {
    El acc = zero();
    long n = std::min<long>(prec_, static_cast<long>(d.size()));
    for (long i = n - 1; i >= 0; --i) {
        acc = mul_pk(acc, 1);
        acc = add(acc, teichmuller(d[i]));
    }
    return acc;
}

ZqRing::El ZqRing::unit_inv(const El& a) const {
    if (val(a) != 0) throw structure_error("ZqRing::unit_inv: not a unit");
    El w = teichmuller(k_->inv(residue(a)));
    El two = from_int(2);
    // Newton: w <- w (2 - a w), precision doubles each step
    long have = 1;
    while (have < prec_) {
        w = mul(w, sub(two, mul(a, w)));
        have *= 2;
    }
    return w;
}

ZqRing::El ZqRing::frobenius(const El& a, long power) const {
    auto d = digits(a);
    for (auto& x : d) x = k_->pow(x, pow_int(k_->p(), ((power % k_->degree()) + k_->degree()) % k_->degree()));
    return from_digits(d);
}

ZqRing::El ZqRing::map_into(const El& a, const ZqRing& target, const gf::Embedding& emb) const {
    if (target.precision() < prec_)
        throw structure_error("ZqRing::map_into: target precision too small");
    auto d = digits(a);
    std::vector<gf::Elem> dd(target.precision(), 0);
    for (long i = 0; i < prec_; ++i) dd[i] = emb.map(d[i]);
    return target.from_digits(dd);
}

SeriesRing::SeriesRing(gf::FieldPtr k, long prec) : k_(std::move(k)), prec_(prec) {
    if (prec < 1) throw structure_error("SeriesRing: precision must be >= 1");
}

SeriesRing::El SeriesRing::one() const {
    El r = zero();
    r.c[0] = k_->one();
    return r;
}

SeriesRing::El SeriesRing::from_int(const Integer& a) const {
    El r = zero();
    r.c[0] = k_->from_int(to_long(mod_floor(a, Integer(k_->p()))));
    return r;
}

bool SeriesRing::is_zero(const El& a) const {
    for (auto x : a.c)
        if (x != 0) return false;
    return true;
}

SeriesRing::El SeriesRing::add(const El& a, const El& b) const {
    El r = zero();
    for (long i = 0; i < prec_; ++i) r.c[i] = k_->add(a.c[i], b.c[i]);
    return r;
}

SeriesRing::El SeriesRing::sub(const El& a, const El& b) const {
    El r = zero();
    for (long i = 0; i < prec_; ++i) r.c[i] = k_->sub(a.c[i], b.c[i]);
    return r;
}

SeriesRing::El SeriesRing::neg(const El& a) const { return sub(zero(), a); }

SeriesRing::El SeriesRing::mul(const El& a, const El& b) const {
    El r = zero();
    for (long i = 0; i < prec_; ++i) {
        if (a.c[i] == 0) continue;
        for (long j = 0; j + i < prec_; ++j)
            if (b.c[j] != 0) r.c[i + j] = k_->add(r.c[i + j], k_->mul(a.c[i], b.c[j]));
    }
    return r;
}

SeriesRing::El SeriesRing::mul_int(const El& a, const Integer& s) const {
    gf::Elem f = k_->from_int(to_long(mod_floor(s, Integer(k_->p()))));
    El r = zero();
    for (long i = 0; i < prec_; ++i) r.c[i] = k_->mul(a.c[i], f);
    return r;
}

long SeriesRing::val(const El& a) const {
    for (long i = 0; i < prec_; ++i)
        if (a.c[i] != 0) return i;
    return prec_;
}

SeriesRing::El SeriesRing::mul_tk(const El& a, long k) const {
    El r = zero();
    for (long i = 0; i + k < prec_; ++i) r.c[i + k] = a.c[i];
    return r;
}

SeriesRing::El SeriesRing::divexact_tk(const El& a, long k) const {
    for (long i = 0; i < k && i < prec_; ++i)
        if (a.c[i] != 0) throw error("SeriesRing::divexact_tk: inexact");
    El r = zero();
    for (long i = k; i < prec_; ++i) r.c[i - k] = a.c[i];
    return r;
}

SeriesRing::El SeriesRing::truncate(const El& a, long digits) const {
    El r = zero();
    for (long i = 0; i < std::min(digits, prec_); ++i) r.c[i] = a.c[i];
    return r;
}

SeriesRing::El SeriesRing::teichmuller(gf::Elem a) const {
    El r = zero();
    r.c[0] = a;
    return r;
}

SeriesRing::El SeriesRing::from_digits(const std::vector<gf::Elem>& d) const {
    El r = zero();
    for (long i = 0; i < prec_ && i < static_cast<long>(d.size()); ++i) r.c[i] = d[i];
    return r;
}

SeriesRing::El SeriesRing::unit_inv(const El& a) const {
    if (a.c[0] == 0) throw structure_error("SeriesRing::unit_inv: not a unit");
    El w = teichmuller(k_->inv(a.c[0]));
    long have = 1;
    while (have < prec_) {
        // w <- w (2 - a w)
        El corr = sub(add(one(), one()), mul(a, w));
        w = mul(w, corr);
        have *= 2;
    }
    return w;
}

SeriesRing::El SeriesRing::frobenius(const El& a, long power) const {
    El r = zero();
    Integer e = pow_int(k_->p(), ((power % k_->degree()) + k_->degree()) % k_->degree());
    for (long i = 0; i < prec_; ++i) r.c[i] = k_->pow(a.c[i], e);
    return r;
}

SeriesRing::El SeriesRing::map_into(const El& a, const SeriesRing& target,
                                    const gf::Embedding& emb) const {
    if (target.precision() < prec_)
        throw structure_error("SeriesRing::map_into: target precision too small");
    El r = target.zero();
    for (long i = 0; i < prec_; ++i) r.c[i] = emb.map(a.c[i]);
    return r;
}

}  // namespace lcft::zq
