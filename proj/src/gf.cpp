#include "gf.hpp"

#include <algorithm>

namespace lcft::gf {

namespace {

constexpr std::uint64_t kTableCap = 1 << 16;

// dense F_p[x] helpers for modulus selection and irreducibility
using Poly = std::vector<long>;  // coefficients, low degree first

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, long p) {
    Poly r(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    // reduce mod monic f
    long deg_f = static_cast<long>(f.size()) - 1;
    for (long d = static_cast<long>(r.size()) - 1; d >= deg_f; --d) {
        long c = r[d];
        if (c == 0) continue;
        r[d] = 0;
        for (long i = 0; i < deg_f; ++i)
            r[d - deg_f + i] = ((r[d - deg_f + i] - c * f[i]) % p + p * p) % p;
    }
    r.resize(deg_f);
    return r;
}

Poly poly_powmod_x(const Integer& e, const Poly& f, long p) {
    Poly base = {0, 1};
    base.resize(f.size() - 1);
    Poly acc = {1};
    acc.resize(f.size() - 1);
    Integer n = e;
    while (n > 0) {
        if ((n & 1) != 0) acc = poly_mulmod(acc, base, f, p);
        base = poly_mulmod(base, base, f, p);
        n >>= 1;
    }
    return acc;
}

Poly poly_mod(Poly a, const Poly& f, long p) {
    long deg_f = static_cast<long>(f.size()) - 1;
    for (long d = static_cast<long>(a.size()) - 1; d >= deg_f; --d) {
        long c = a[d];
        if (c == 0) continue;
        a[d] = 0;
        for (long i = 0; i < deg_f; ++i)
            a[d - deg_f + i] = ((a[d - deg_f + i] - c * f[i]) % p + p * p) % p;
    }
    trim(a);
    return a;
}

Poly poly_gcd(Poly a, Poly b, long p) {
    trim(a);
    trim(b);
    auto inv_mod_p = [p](long x) {
        long r = 1, base = ((x % p) + p) % p, e = p - 2;
        while (e) {
            if (e & 1) r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return r;
    };
    while (!b.empty()) {
        // a mod b with b made monic
        long lead = b.back();
        if (lead != 1) {
            long li = inv_mod_p(lead);
            for (auto& c : b) c = c * li % p;
        }
        Poly f = b;
        a = poly_mod(std::move(a), f, p);
        std::swap(a, b);
    }
    return a;
}

std::vector<long> prime_factors(std::uint64_t n) {
    std::vector<long> out;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(static_cast<long>(d));
            while (n % d == 0) n /= d;
        }
    if (n > 1) out.push_back(static_cast<long>(n));
    return out;
}

}  // namespace

bool Field::is_irreducible(long p, const std::vector<long>& tail) {
    long m = static_cast<long>(tail.size());
    if (m == 0) return false;
    Poly f = tail;
    f.push_back(1);
    if (m == 1) return true;
    // x^{p^m} == x mod f, and gcd(x^{p^{m/l}} - x, f) = 1 for prime l | m
    Poly xq = poly_powmod_x(pow_int(p, m), f, p);
    Poly x = {0, 1};
    x.resize(m);
    if (xq != x) return false;
    for (long l : prime_factors(m)) {
        Poly xe = poly_powmod_x(pow_int(p, m / l), f, p);
        Poly diff(m, 0);
        for (long i = 0; i < m; ++i) diff[i] = ((xe[i] - x[i]) % p + p) % p;
        Poly g = poly_gcd(f, diff, p);
        if (!(g.size() == 1)) return false;
    }
    return true;
}

Field::Field(long p, long m) : p_(p), m_(m) {
    if (p < 2 || m < 1) throw structure_error("Field: bad parameters");
    std::uint64_t count = 1;
    for (long i = 0; i < m; ++i) count *= static_cast<std::uint64_t>(p);
    q_ = count;
    if (m == 1) {
        mod_ = {0};  // f = x (unused)
        build();
        return;
    }
    for (std::uint64_t code = 0; code < q_; ++code) {
        std::vector<long> tail(m);
        std::uint64_t c = code;
        for (long i = 0; i < m; ++i) {
            tail[i] = static_cast<long>(c % p);
            c /= p;
        }
        if (is_irreducible(p, tail)) {
            mod_ = tail;
            build();
            return;
        }
    }
    throw structure_error("Field: no irreducible polynomial found");
}

Field::Field(long p, std::vector<long> tail) : p_(p), m_(static_cast<long>(tail.size())) {
    if (p < 2 || m_ < 1) throw structure_error("Field: bad parameters");
    for (auto& c : tail) c = ((c % p) + p) % p;
    if (m_ > 1 && !is_irreducible(p, tail))
        throw structure_error("Field: defining polynomial is not irreducible");
    mod_ = tail;
    q_ = 1;
    for (long i = 0; i < m_; ++i) q_ *= static_cast<std::uint64_t>(p);
    build();
}

Elem Field::from_int(long a) const {
    long r = ((a % p_) + p_) % p_;
    return static_cast<Elem>(r);
}

Elem Field::from_coeffs(const std::vector<long>& c) const {
    Elem code = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
        long d = ((c[i] % p_) + p_) % p_;
        code = code * static_cast<Elem>(p_) + static_cast<Elem>(d);
    }
    return code;
}

std::vector<long> Field::coeffs(Elem a) const {
    std::vector<long> c(m_);
    for (long i = 0; i < m_; ++i) {
        c[i] = static_cast<long>(a % static_cast<Elem>(p_));
        a /= static_cast<Elem>(p_);
    }
    return c;
}

Elem Field::add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    Elem r = 0, mult = 1;
    for (long i = 0; i < m_; ++i) {
        long da = static_cast<long>(a % static_cast<Elem>(p_));
        long db = static_cast<long>(b % static_cast<Elem>(p_));
        r += static_cast<Elem>((da + db) % p_) * mult;
        a /= static_cast<Elem>(p_);
        b /= static_cast<Elem>(p_);
        mult *= static_cast<Elem>(p_);
    }
    return r;
}

Elem Field::neg(Elem a) const {
    if (p_ == 2) return a;
    Elem r = 0, mult = 1;
    for (long i = 0; i < m_; ++i) {
        long da = static_cast<long>(a % static_cast<Elem>(p_));
        r += static_cast<Elem>((p_ - da) % p_) * mult;
        a /= static_cast<Elem>(p_);
        mult *= static_cast<Elem>(p_);
    }
    return r;
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::mul_generic(Elem a, Elem b) const {
    std::vector<long> ca = coeffs(a), cb = coeffs(b);
    std::vector<long> r(2 * m_, 0);
    for (long i = 0; i < m_; ++i) {
        if (ca[i] == 0) continue;
        for (long j = 0; j < m_; ++j) r[i + j] = (r[i + j] + ca[i] * cb[j]) % p_;
    }
    for (long d = 2 * m_ - 1; d >= m_; --d) {
        long c = r[d];
        if (c == 0) continue;
        r[d] = 0;
        for (long i = 0; i < m_; ++i)
            r[d - m_ + i] = ((r[d - m_ + i] - c * mod_[i]) % p_ + p_ * p_) % p_;
    }
    r.resize(m_);
    return from_coeffs(r);
}

Elem Field::mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (tables_) {
        std::uint64_t s = log_[a] + log_[b];
        if (s >= q_ - 1) s -= q_ - 1;
        return exp_[s];
    }
    return mul_generic(a, b);
}

Elem Field::inv(Elem a) const {
    if (a == 0) throw structure_error("Field::inv of zero");
    if (tables_) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    return pow(a, Integer(q_ - 2));
}

Elem Field::pow(Elem a, const Integer& e) const {
    Integer n = e;
    if (a == 0) {
        if (n == 0) return 1;
        if (n < 0) throw structure_error("Field::pow: zero to negative power");
        return 0;
    }
    Integer period(q_ - 1);
    n = mod_floor(n, period);
    if (tables_) {
        Integer idx = mod_floor(Integer(log_[a]) * n, period);
        return exp_[static_cast<std::uint64_t>(idx)];
    }
    Elem acc = 1, base = a;
    while (n > 0) {
        if ((n & 1) != 0) acc = mul_generic(acc, base);
        base = mul_generic(base, base);
        n >>= 1;
    }
    return acc;
}

Elem Field::inv_frobenius(Elem a) const {
    // p-th root: a^(p^(m-1)) since a^(p^m) = a
    Elem r = a;
    for (long i = 0; i < m_ - 1; ++i) r = pow(r, p_);
    return r;
}

long Field::trace(Elem a) const {
    Elem acc = 0, cur = a;
    for (long i = 0; i < m_; ++i) {
        acc = add(acc, cur);
        cur = pow(cur, p_);
    }
    return static_cast<long>(acc % static_cast<Elem>(p_));
}

std::uint64_t Field::dlog(Elem a) const {
    if (a == 0) throw structure_error("Field::dlog of zero");
    if (tables_) return log_[a];
    // brute force for oversized fields
    Elem cur = 1;
    for (std::uint64_t i = 0; i < q_ - 1; ++i) {
        if (cur == a) return i;
        cur = mul(cur, gen_);
    }
    throw error("Field::dlog: not found");
}

void Field::build() {
    // canonical multiplicative generator: least code of full order
    auto factors = prime_factors(q_ - 1);
    for (Elem cand = 1; cand < q_; ++cand) {
        bool ok = true;
        for (long l : factors) {
            Elem t = cand;
            // t^((q-1)/l) via generic power
            Integer e((q_ - 1) / static_cast<std::uint64_t>(l));
            Elem acc = 1, base = t;
            Integer n = e;
            while (n > 0) {
                if ((n & 1) != 0) acc = mul_generic(acc, base);
                base = mul_generic(base, base);
                n >>= 1;
            }
            if (acc == 1) {
                ok = false;
                break;
            }
        }
        if (ok || q_ == 2) {
            gen_ = (q_ == 2) ? 1 : cand;
            break;
        }
    }
    if (q_ <= kTableCap) {
        exp_.resize(q_ - 1);
        log_.assign(q_, 0);
        Elem cur = 1;
        for (std::uint64_t i = 0; i < q_ - 1; ++i) {
            exp_[i] = cur;
            log_[cur] = static_cast<std::uint32_t>(i);
            cur = mul_generic(cur, gen_);
        }
        tables_ = true;
    }
}

FieldPtr make_field(long p, long m) { return std::make_shared<Field>(p, m); }
FieldPtr make_field(long p, const std::vector<long>& tail) {
    return std::make_shared<Field>(p, tail);
}

Embedding::Embedding(FieldPtr src, FieldPtr dst) : src_(std::move(src)), dst_(std::move(dst)) {
    if (src_->p() != dst_->p() || dst_->degree() % src_->degree() != 0)
        throw structure_error("Embedding: target is not an extension of the source");
    // least root of the source modulus in the target
    Elem root = 0;
    bool found = false;
    if (src_->degree() == 1) {
        root = 0;  // unused
        found = true;
    } else {
        const std::vector<long>& tail = src_->modulus_tail();
        for (Elem cand = 0; cand < dst_->size(); ++cand) {
            // monic src modulus evaluated at cand
            Elem val = dst_->one();
            for (long i = 0; i < src_->degree(); ++i) val = dst_->mul(val, cand);
            Elem power = dst_->one();
            for (long i = 0; i < src_->degree(); ++i) {
                if (tail[i] != 0)
                    val = dst_->add(val, dst_->mul(dst_->from_int(tail[i]), power));
                power = dst_->mul(power, cand);
            }
            if (val == 0) {
                root = cand;
                found = true;
                break;
            }
        }
    }
    if (!found) throw structure_error("Embedding: no root of source modulus in target");
    basis_img_.resize(src_->degree());
    Elem cur = dst_->one();
    for (long i = 0; i < src_->degree(); ++i) {
        basis_img_[i] = cur;
        cur = dst_->mul(cur, root);
    }
}

Elem Embedding::map(Elem a) const {
    std::vector<long> c = src_->coeffs(a);
    Elem acc = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        acc = dst_->add(acc, dst_->mul(dst_->from_int(c[i]), basis_img_[i]));
    }
    return acc;
}

PerfRing::PerfRing(std::vector<FieldPtr> comps) : components(std::move(comps)) {
    if (components.empty()) throw structure_error("PerfRing: no components");
    long p = components[0]->p();
    for (const auto& f : components)
        if (f->p() != p) throw structure_error("PerfRing: mixed characteristics");
}

}  // namespace lcft::gf
