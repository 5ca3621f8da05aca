#include "localfield.hpp"

#include <algorithm>
#include <sstream>

namespace lcft::lf {

namespace {
const zq::ZqPtr& as_zq(const std::variant<zq::ZqPtr, zq::SeriesPtr>& v) {
    return std::get<zq::ZqPtr>(v);
}
const zq::SeriesPtr& as_series(const std::variant<zq::ZqPtr, zq::SeriesPtr>& v) {
    return std::get<zq::SeriesPtr>(v);
}
}  // namespace

Kind CoeffRing::kind() const {
    return std::holds_alternative<zq::ZqPtr>(impl_) ? Kind::mixed : Kind::equal;
}

const gf::FieldPtr& CoeffRing::residue_field() const {
    if (kind() == Kind::mixed) return as_zq(impl_)->residue_field();
    return as_series(impl_)->residue_field();
}

long CoeffRing::precision() const {
    return kind() == Kind::mixed ? as_zq(impl_)->precision() : as_series(impl_)->precision();
}

long CoeffRing::p() const { return residue_field()->p(); }

CoeffEl CoeffRing::zero() const {
    if (kind() == Kind::mixed) return as_zq(impl_)->zero();
    return as_series(impl_)->zero();
}

CoeffEl CoeffRing::one() const {
    if (kind() == Kind::mixed) return as_zq(impl_)->one();
    return as_series(impl_)->one();
}

CoeffEl CoeffRing::from_int(const Integer& a) const {
    if (kind() == Kind::mixed) return as_zq(impl_)->from_int(a);
    return as_series(impl_)->from_int(a);
}

bool CoeffRing::is_zero(const CoeffEl& a) const {
    if (kind() == Kind::mixed) return as_zq(impl_)->is_zero(std::get<zq::ZqRing::El>(a));
    return as_series(impl_)->is_zero(std::get<zq::SeriesRing::El>(a));
}

bool CoeffRing::equal(const CoeffEl& a, const CoeffEl& b) const {
    if (kind() == Kind::mixed)
        return as_zq(impl_)->equal(std::get<zq::ZqRing::El>(a), std::get<zq::ZqRing::El>(b));
    return as_series(impl_)->equal(std::get<zq::SeriesRing::El>(a),
                                   std::get<zq::SeriesRing::El>(b));
}

#define LCFT_COEFF_BINOP(name)                                                              \
    CoeffEl CoeffRing::name(const CoeffEl& a, const CoeffEl& b) const {                     \
        if (kind() == Kind::mixed)                                                          \
            return as_zq(impl_)->name(std::get<zq::ZqRing::El>(a),                          \
                                      std::get<zq::ZqRing::El>(b));                         \
        return as_series(impl_)->name(std::get<zq::SeriesRing::El>(a),                      \
                                      std::get<zq::SeriesRing::El>(b));                     \
    }

LCFT_COEFF_BINOP(add)
LCFT_COEFF_BINOP(sub)
LCFT_COEFF_BINOP(mul)
#undef LCFT_COEFF_BINOP

CoeffEl CoeffRing::neg(const CoeffEl& a) const {
    if (kind() == Kind::mixed) return as_zq(impl_)->neg(std::get<zq::ZqRing::El>(a));
    return as_series(impl_)->neg(std::get<zq::SeriesRing::El>(a));
}

gf::Elem CoeffRing::residue(const CoeffEl& a) const {
    if (kind() == Kind::mixed) return as_zq(impl_)->residue(std::get<zq::ZqRing::El>(a));
    return as_series(impl_)->residue(std::get<zq::SeriesRing::El>(a));
}

long CoeffRing::val(const CoeffEl& a) const {
    if (kind() == Kind::mixed) return as_zq(impl_)->val(std::get<zq::ZqRing::El>(a));
    return as_series(impl_)->val(std::get<zq::SeriesRing::El>(a));
}

CoeffEl CoeffRing::shift_up(const CoeffEl& a, long k) const {
    if (kind() == Kind::mixed) return as_zq(impl_)->mul_pk(std::get<zq::ZqRing::El>(a), k);
    return as_series(impl_)->mul_tk(std::get<zq::SeriesRing::El>(a), k);
}

CoeffEl CoeffRing::shift_down(const CoeffEl& a, long k) const {
    if (kind() == Kind::mixed) return as_zq(impl_)->divexact_pk(std::get<zq::ZqRing::El>(a), k);
    return as_series(impl_)->divexact_tk(std::get<zq::SeriesRing::El>(a), k);
}

CoeffEl CoeffRing::truncate(const CoeffEl& a, long digits) const {
    if (digits < 0) digits = 0;
    if (kind() == Kind::mixed) return as_zq(impl_)->truncate(std::get<zq::ZqRing::El>(a), digits);
    return as_series(impl_)->truncate(std::get<zq::SeriesRing::El>(a), digits);
}

CoeffEl CoeffRing::teichmuller(gf::Elem a) const {
    if (kind() == Kind::mixed) return as_zq(impl_)->teichmuller(a);
    return as_series(impl_)->teichmuller(a);
}

std::vector<gf::Elem> CoeffRing::digits(const CoeffEl& a) const {
    if (kind() == Kind::mixed) return as_zq(impl_)->digits(std::get<zq::ZqRing::El>(a));
    return as_series(impl_)->digits(std::get<zq::SeriesRing::El>(a));
}

CoeffEl CoeffRing::from_digits(const std::vector<gf::Elem>& d) const {
    if (kind() == Kind::mixed) return as_zq(impl_)->from_digits(d);
    return as_series(impl_)->from_digits(d);
}

CoeffEl CoeffRing::unit_inv(const CoeffEl& a) const {
    if (kind() == Kind::mixed) return as_zq(impl_)->unit_inv(std::get<zq::ZqRing::El>(a));
    return as_series(impl_)->unit_inv(std::get<zq::SeriesRing::El>(a));
}

CoeffEl CoeffRing::frobenius(const CoeffEl& a, long power) const {
    if (kind() == Kind::mixed) return as_zq(impl_)->frobenius(std::get<zq::ZqRing::El>(a), power);
    return as_series(impl_)->frobenius(std::get<zq::SeriesRing::El>(a), power);
}

CoeffEl CoeffRing::map_into(const CoeffEl& a, const CoeffRing& target,
                            const gf::Embedding& emb) const {
    if (kind() == Kind::mixed)
        return as_zq(impl_)->map_into(std::get<zq::ZqRing::El>(a), *as_zq(target.impl_), emb);
    return as_series(impl_)->map_into(std::get<zq::SeriesRing::El>(a), *as_series(target.impl_),
                                      emb);
}

// ---------------------------------------------------------------------------

LocalFieldPtr LocalField::make_base(Kind kind, gf::FieldPtr residue, long precision_pi) {
    if (precision_pi < 4) throw structure_error("LocalField: precision must be >= 4");
    auto f = std::shared_ptr<LocalField>(new LocalField());
    f->kind_ = kind;
    f->residue_ = residue;
    f->e_ = 1;
    f->prec_pi_ = precision_pi;
    long m = precision_pi + 2;
    if (kind == Kind::mixed)
        f->coeff_ = CoeffRing(std::make_shared<zq::ZqRing>(residue, m));
    else
        f->coeff_ = CoeffRing(std::make_shared<zq::SeriesRing>(residue, m));
    return f;
}

LocalFieldPtr LocalField::make_eisenstein(const LocalFieldPtr& base,
                                          const std::vector<CoeffEl>& tail) {
    if (!base->is_base())
        throw structure_error("make_eisenstein: base must be an unramified layer");
    long e = static_cast<long>(tail.size());
    if (e < 2) throw structure_error("make_eisenstein: degree must be >= 2");
    const CoeffRing& cr = base->coeff();
    if (cr.val(tail[0]) != 1)
        throw structure_error(
            "make_eisenstein: constant term must have valuation exactly 1 (Eisenstein)");
    for (long i = 1; i < e; ++i)
        if (cr.val(tail[i]) < 1)
            throw structure_error("make_eisenstein: non-leading coefficients must be divisible "
                                  "by the maximal ideal (Eisenstein)");
    auto f = std::shared_ptr<LocalField>(new LocalField());
    f->kind_ = base->kind();
    f->residue_ = base->residue_field();
    f->e_ = e;
    f->prec_pi_ = base->precision_pi() * e;
    f->coeff_ = base->coeff();
    f->tail_ = tail;
    return f;
}

LocalFieldPtr LocalField::unramified_layer() const {
    if (is_base()) return shared_from_this();
    auto f = std::shared_ptr<LocalField>(new LocalField());
    f->kind_ = kind_;
    f->residue_ = residue_;
    f->e_ = 1;
    f->prec_pi_ = prec_pi_ / e_;
    f->coeff_ = coeff_;
    return f;
}

Elem LocalField::zero(long prec) const {
    Elem x;
    x.field = shared_from_this();
    x.prec = prec < 0 ? prec_pi_ : prec;
    x.shift = 0;
    x.poly.assign(e_, coeff_.zero());
    x.zero_to_prec = true;
    return x;
}

Elem LocalField::from_coeff(const CoeffEl& c, long prec) const {
    Elem x;
    x.field = shared_from_this();
    x.prec = prec < 0 ? prec_pi_ : prec;
    x.shift = 0;
    x.poly.assign(e_, coeff_.zero());
    x.poly[0] = c;
    x.zero_to_prec = false;
    return normalized(std::move(x));
}

Elem LocalField::one(long prec) const { return from_coeff(coeff_.one(), prec); }

Elem LocalField::pi(long prec) const {
    if (e_ == 1) {
        Elem x = from_coeff(coeff_.shift_up(coeff_.one(), 1), prec);
        return x;
    }
    Elem x;
    x.field = shared_from_this();
    x.prec = prec < 0 ? prec_pi_ : prec;
    x.shift = 0;
    x.poly.assign(e_, coeff_.zero());
    x.poly[1] = coeff_.one();
    x.zero_to_prec = false;
    return normalized(std::move(x));
}

Elem LocalField::from_int(const Integer& a, long prec) const {
    return from_coeff(coeff_.from_int(a), prec);
}

Elem LocalField::teich(gf::Elem a, long prec) const {
    return from_coeff(coeff_.teichmuller(a), prec);
}

Elem LocalField::from_digits(long lead, const std::vector<gf::Elem>& digits, long prec) const {
    long target = prec < 0 ? prec_pi_ : prec;
    long work = target + static_cast<long>(digits.size()) + std::max(0L, -lead) + 1;
    Elem acc = zero(work);
    for (std::size_t i = digits.size(); i-- > 0;) {
        acc = mul_pi_power(acc, 1);
        if (digits[i] != 0) acc = add(acc, teich(digits[i], work));
    }
    return with_precision(mul_pi_power(acc, lead), target);
}

long LocalField::bracket_val(const std::vector<CoeffEl>& a) const {
    long best = e_ * (coeff_.precision() + 1);
    for (long i = 0; i < e_; ++i) {
        if (coeff_.is_zero(a[i])) continue;
        best = std::min(best, e_ * coeff_.val(a[i]) + i);
    }
    return best;  // huge when the bracket is identically zero
}

Elem LocalField::normalized(Elem x) const {
    // Note: the coefficient-ring uniformizer is pi^e only up to a unit, so
    // coefficient valuations are never folded into the pi-shift; the shift
    // tracks powers of pi alone.
    if (x.zero_to_prec) return x;
    bool all_zero = true;
    for (long i = 0; i < e_; ++i)
        if (!coeff_.is_zero(x.poly[i])) {
            all_zero = false;
            break;
        }
    if (all_zero || x.shift + bracket_val(x.poly) >= x.prec) return zero(x.prec);
    // the representation holds e * M pi-digits above the shift; cap the claim
    x.prec = std::min(x.prec, x.shift + e_ * coeff_.precision());
    long headroom = x.prec - x.shift;
    for (long i = 0; i < e_; ++i) {
        long keep = headroom - i;  // digits j with i + e*j < headroom
        long kd = keep <= 0 ? 0 : (keep + e_ - 1) / e_;
        x.poly[i] = coeff_.truncate(x.poly[i], kd);
    }
    // truncation can wipe everything out
    bool now_zero = true;
    for (long i = 0; i < e_; ++i)
        if (!coeff_.is_zero(x.poly[i])) {
            now_zero = false;
            break;
        }
    if (now_zero) return zero(x.prec);
    return x;
}

std::vector<CoeffEl> LocalField::times_pi(std::vector<CoeffEl> a) const {
    if (e_ == 1) {
        a[0] = coeff_.shift_up(a[0], 1);
        return a;
    }
    // multiply by x modulo E: shift up, reduce top coefficient
    CoeffEl top = a[e_ - 1];
    for (long i = e_ - 1; i >= 1; --i) a[i] = a[i - 1];
    a[0] = coeff_.zero();
    if (!coeff_.is_zero(top))
        for (long i = 0; i < e_; ++i)
            a[i] = coeff_.sub(a[i], coeff_.mul(top, tail_[i]));
    return a;
}

std::vector<CoeffEl> LocalField::mul_mod_e(const std::vector<CoeffEl>& a,
                                           const std::vector<CoeffEl>& b) const {
    if (e_ == 1) return {coeff_.mul(a[0], b[0])};
    std::vector<CoeffEl> r(2 * e_ - 1, coeff_.zero());
    for (long i = 0; i < e_; ++i) {
        if (coeff_.is_zero(a[i])) continue;
        for (long j = 0; j < e_; ++j) {
            if (coeff_.is_zero(b[j])) continue;
            r[i + j] = coeff_.add(r[i + j], coeff_.mul(a[i], b[j]));
        }
    }
    for (long d = 2 * e_ - 2; d >= e_; --d) {
        if (coeff_.is_zero(r[d])) continue;
        CoeffEl c = r[d];
        r[d] = coeff_.zero();
        for (long i = 0; i < e_; ++i)
            r[d - e_ + i] = coeff_.sub(r[d - e_ + i], coeff_.mul(c, tail_[i]));
    }
    r.resize(e_);
    return r;
}

Elem LocalField::add(const Elem& a, const Elem& b) const {
    if (a.field.get() != this || b.field.get() != this)
        throw structure_error("add: element of a different field");
    long prec = std::min(a.prec, b.prec);
    if (a.zero_to_prec && b.zero_to_prec) return zero(prec);
    if (a.zero_to_prec) return with_precision(b, prec);
    if (b.zero_to_prec) return with_precision(a, prec);
    const Elem* lo = &a;
    const Elem* hi = &b;
    if (lo->shift > hi->shift) std::swap(lo, hi);
    if (hi->shift >= prec) return with_precision(*lo, prec);
    std::vector<CoeffEl> hp = hi->poly;
    for (long k = 0; k < hi->shift - lo->shift; ++k) hp = times_pi(std::move(hp));
    Elem r;
    r.field = shared_from_this();
    r.shift = lo->shift;
    r.prec = prec;
    r.poly.resize(e_);
    for (long i = 0; i < e_; ++i) r.poly[i] = coeff_.add(lo->poly[i], hp[i]);
    r.zero_to_prec = false;
    return normalized(std::move(r));
}

Elem LocalField::neg(const Elem& a) const {
    if (a.zero_to_prec) return a;
    Elem r = a;
    for (long i = 0; i < e_; ++i) r.poly[i] = coeff_.neg(r.poly[i]);
    return r;
}

Elem LocalField::sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

std::optional<long> LocalField::valuation(const Elem& a) const {
    if (a.zero_to_prec) return std::nullopt;
    return a.shift + bracket_val(a.poly);
}

Elem LocalField::mul(const Elem& a, const Elem& b) const {
    if (a.field.get() != this || b.field.get() != this)
        throw structure_error("mul: element of a different field");
    long va = a.zero_to_prec ? a.prec : *valuation(a);
    long vb = b.zero_to_prec ? b.prec : *valuation(b);
    long prec = std::min(a.prec + vb, b.prec + va);
    if (a.zero_to_prec || b.zero_to_prec) return zero(prec);
    Elem r;
    r.field = shared_from_this();
    r.shift = a.shift + b.shift;
    r.prec = prec;
    r.poly = mul_mod_e(a.poly, b.poly);
    r.zero_to_prec = false;
    return normalized(std::move(r));
}

Elem LocalField::mul_pi_power(const Elem& a, long k) const {
    if (a.zero_to_prec) return zero(a.prec + k);
    Elem r = a;
    r.prec = a.prec + k;
    r.shift += k;  // pi^shift is part of the representation, for either sign
    return normalized(std::move(r));
}

std::pair<long, Elem> LocalField::unit_decompose(const Elem& a) const {
    auto v = valuation(a);
    if (!v) throw precision_error("unit_decompose: element is zero to precision", a.prec + 1);
    Elem u = a;
    long bv = bracket_val(u.poly);
    // remove bracket valuation by dividing by x (x^{-1} = -(c_1 + ... +
    // c_{e-1} x^{e-2} + x^{e-1}) / c_0; exact since val(b_0) >= 1 here)
    for (long s = 0; s < bv; ++s) {
        if (e_ == 1) {
            u.poly[0] = coeff_.shift_down(u.poly[0], 1);
            u.shift += 1;
            continue;
        }
        std::vector<CoeffEl> b = u.poly;
        CoeffEl b0 = b[0];
        for (long i = 0; i + 1 < e_; ++i) b[i] = b[i + 1];
        b[e_ - 1] = coeff_.zero();
        if (!coeff_.is_zero(b0)) {
            CoeffEl c0_unit = coeff_.shift_down(tail_[0], 1);
            CoeffEl factor = coeff_.mul(coeff_.shift_down(b0, 1), coeff_.unit_inv(c0_unit));
            for (long i = 0; i + 1 < e_; ++i)
                b[i] = coeff_.sub(b[i], coeff_.mul(factor, tail_[i + 1]));
            b[e_ - 1] = coeff_.sub(b[e_ - 1], factor);
        }
        u.poly = std::move(b);
        u.shift += 1;
    }
    u.shift -= *v;
    u.prec = a.prec - *v;
    u = normalized(std::move(u));
    return {*v, u};
}

gf::Elem LocalField::residue(const Elem& a) const {
    auto [v, u] = unit_decompose(a);
    if (v != 0) throw structure_error("residue: element is not a unit");
    return coeff_.residue(u.poly[0]);
}

Elem LocalField::inv(const Elem& a) const {
    auto vu = unit_decompose(a);
    long v = vu.first;
    const Elem& u = vu.second;
    long prec_out = a.prec - 2 * v;
    if (prec_out <= 0)
        throw precision_error("inv: insufficient precision", 2 * v + 1);
    // Newton iteration w <- w(2 - u w) on the unit part
    Elem w = from_coeff(coeff_.unit_inv(u.poly[0]), prec_out);
    Elem two = add(one(prec_out), one(prec_out));
    long have = 1;
    Elem uu = with_precision(u, prec_out);
    while (have < prec_out) {
        w = mul(w, sub(two, mul(uu, w)));
        w = with_precision(w, prec_out);
        have *= 2;
    }
    return mul_pi_power(w, -v);
}

Elem LocalField::pow(const Elem& a, const Integer& n) const {
    if (n < 0) return inv(pow(a, -n));
    Elem acc = one(a.prec);
    Elem base = a;
    Integer e = n;
    while (e > 0) {
        if ((e & 1) != 0) acc = mul(acc, base);
        e >>= 1;
        if (e > 0) base = mul(base, base);
    }
    return acc;
}

bool LocalField::equal(const Elem& a, const Elem& b) const {
    Elem d = sub(a, b);
    return d.zero_to_prec;
}

Elem LocalField::with_precision(const Elem& a, long prec) const {
    Elem r = a;
    r.prec = prec;
    if (r.zero_to_prec) return r;
    return normalized(std::move(r));
}

std::vector<CoeffEl> LocalField::integral_coordinates(const Elem& a) const {
    if (a.zero_to_prec) return std::vector<CoeffEl>(e_, coeff_.zero());
    auto v = valuation(a);
    if (*v < 0) throw structure_error("integral_coordinates: negative valuation");
    Elem x = a;
    if (x.shift < 0) {
        // fold the negative shift through the digit expansion
        auto d = to_digits(a);
        x = from_digits(d.lead, d.digits, a.prec);
    }
    std::vector<CoeffEl> poly = x.poly;
    for (long k = 0; k < x.shift; ++k) poly = times_pi(std::move(poly));
    return poly;
}

Elem LocalField::from_bracket(std::vector<CoeffEl> poly, long shift, long prec) const {
    Elem x;
    x.field = shared_from_this();
    x.shift = shift;
    x.prec = prec < 0 ? prec_pi_ : prec;
    if (static_cast<long>(poly.size()) != e_)
        throw structure_error("from_bracket: wrong coordinate count");
    x.poly = std::move(poly);
    x.zero_to_prec = false;
    return normalized(std::move(x));
}

LocalField::DigitExpansion LocalField::to_digits(const Elem& a) const {
    DigitExpansion out;
    out.prec = a.prec;
    if (a.zero_to_prec) {
        out.lead = a.prec;
        return out;
    }
    Elem r = a;
    long lead = *valuation(a);
    out.lead = lead;
    long i = lead;
    while (!r.zero_to_prec && i < a.prec) {
        long v = *valuation(r);
        while (i < v) {
            out.digits.push_back(0);
            ++i;
        }
        auto [vv, u] = unit_decompose(r);
        gf::Elem d = coeff_.residue(u.poly[0]);
        out.digits.push_back(d);
        r = sub(r, mul_pi_power(teich(d, a.prec - v), v));
        ++i;
    }
    return out;
}

std::string LocalField::show(const Elem& a) const {
    std::ostringstream os;
    if (a.zero_to_prec) {
        os << "O(pi^" << a.prec << ")";
        return os.str();
    }
    auto d = to_digits(a);
    bool first = true;
    for (std::size_t i = 0; i < d.digits.size(); ++i) {
        if (d.digits[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << "[" << d.digits[i] << "]";
        long expn = d.lead + static_cast<long>(i);
        if (expn != 0) os << "*pi^" << expn;
    }
    if (first) os << "0";
    os << " + O(pi^" << a.prec << ")";
    return os.str();
}

Elem LocalField::coeff_frobenius(const Elem& a, long power) const {
    if (a.zero_to_prec) return a;
    Elem r = a;
    for (long i = 0; i < e_; ++i) r.poly[i] = coeff_.frobenius(r.poly[i], power);
    return normalized(std::move(r));
}

LocalField::ScalarExtension LocalField::extend_residue(gf::FieldPtr new_residue) const {
    ScalarExtension out;
    auto emb = std::make_shared<gf::Embedding>(residue_, new_residue);
    auto f = std::shared_ptr<LocalField>(new LocalField());
    f->kind_ = kind_;
    f->residue_ = new_residue;
    f->e_ = e_;
    f->prec_pi_ = prec_pi_;
    long m = coeff_.precision();
    CoeffRing newcr;
    if (kind_ == Kind::mixed)
        newcr = CoeffRing(std::make_shared<zq::ZqRing>(new_residue, m));
    else
        newcr = CoeffRing(std::make_shared<zq::SeriesRing>(new_residue, m));
    f->coeff_ = newcr;
    for (const auto& c : tail_) f->tail_.push_back(coeff_.map_into(c, newcr, *emb));
    out.field = f;
    out.emb = emb;
    const CoeffRing src = coeff_;
    out.map = [src, newcr, emb, f](const Elem& x) {
        Elem y;
        y.field = f;
        y.shift = x.shift;
        y.prec = x.prec;
        y.zero_to_prec = x.zero_to_prec;
        for (const auto& c : x.poly) y.poly.push_back(src.map_into(c, newcr, *emb));
        if (y.zero_to_prec) y.poly.assign(f->e_, newcr.zero());
        return y;
    };
    return out;
}

// ---------------------------------------------------------------------------

UnitGroupQuotient::UnitGroupQuotient(LocalFieldPtr field, long level)
    : field_(std::move(field)), n_(level) {
    if (n_ < 1) throw structure_error("UnitGroupQuotient: level must be >= 1");
    if (field_->precision_pi() < n_ + 1)
        throw precision_error("UnitGroupQuotient: field precision too small", n_ + 1);
    const auto& k = field_->residue_field();
    long m = k->degree();
    // generators: Teichmuller generator, then 1 + omega(b_i) pi^j
    gens_.push_back(field_->teich(k->generator()));
    for (long j = 1; j < n_; ++j)
        for (long i = 0; i < m; ++i) {
            gf::Elem basis = k->from_coeffs([&] {
                std::vector<long> c(m, 0);
                c[i] = 1;
                return c;
            }());
            gens_.push_back(field_->add(field_->one(), field_->mul_pi_power(
                                                            field_->teich(basis), j)));
        }
    // triangular relation matrix: g_0^(q-1) = 1 and g^p expressed in deeper gens
    std::size_t g = gens_.size();
    abgroup::IntMatrix rel(g, g);
    rel.at(0, 0) = Integer(k->size() - 1);
    long p = k->p();
    for (std::size_t idx = 1; idx < g; ++idx) {
        Elem power = field_->pow(gens_[idx], Integer(p));
        auto coords = generator_coordinates(power);  // lives in deeper levels only
        for (std::size_t t = 0; t < g; ++t) rel.at(t, idx) = -coords[t];
        rel.at(idx, idx) += p;
    }
    group_ = abgroup::FinAbGroup::cokernel(g, rel);
}

std::vector<Integer> UnitGroupQuotient::generator_coordinates(const Elem& u) const {
    const auto& k = field_->residue_field();
    long m = k->degree();
    std::vector<Integer> coords(gens_.size(), 0);
    auto v = field_->valuation(u);
    if (!v || *v != 0) throw structure_error("unit group: element is not a unit");
    Elem x = field_->with_precision(u, n_);
    gf::Elem r = field_->residue(x);
    if (r == 0) throw structure_error("unit group: residue vanished");
    std::uint64_t dl = (k->size() == 2) ? 0 : k->dlog(r);
    coords[0] = Integer(dl);
    x = field_->mul(x, field_->inv(field_->teich(r)));
    for (long j = 1; j < n_; ++j) {
        // digit of x - 1 at pi^j
        Elem delta = field_->sub(x, field_->one(n_));
        auto vd = field_->valuation(delta);
        if (!vd || *vd >= n_) break;
        if (*vd < j) throw error("unit group: filtration drift");
        if (*vd > j) continue;
        Elem unit = field_->unit_decompose(delta).second;
        gf::Elem digit = field_->residue(field_->with_precision(unit, 1));
        auto lam = k->coeffs(digit);
        Elem corr = field_->one(n_);
        for (long i = 0; i < m; ++i) {
            if (lam[i] == 0) continue;
            std::size_t idx = 1 + static_cast<std::size_t>((j - 1) * m + i);
            coords[idx] = lam[i];
            corr = field_->mul(corr, field_->pow(gens_[idx], Integer(lam[i])));
        }
        x = field_->mul(x, field_->inv(corr));
    }
    return coords;
}

std::vector<Integer> UnitGroupQuotient::to_group(const Elem& u) const {
    return group_.classify(generator_coordinates(u));
}

Elem UnitGroupQuotient::from_group(const std::vector<Integer>& canonical) const {
    auto amb = group_.representative(canonical);
    Elem acc = field_->one();
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (amb[i] == 0) continue;
        acc = field_->mul(acc, field_->pow(gens_[i], amb[i]));
    }
    // canonical digit form at the quotient level
    auto d = field_->to_digits(field_->with_precision(acc, n_));
    return field_->from_digits(d.lead, d.digits, n_);
}

// ---------------------------------------------------------------------------

RingPoint PointsContext::make(const std::vector<Elem>& comps) const {
    RingPoint p;
    p.test_ring = test_ring;
    for (const auto& e : ext) p.component_fields.push_back(e.field);
    p.components = comps;
    return p;
}

RingPoint PointsContext::transport(const Elem& base_elem) const {
    std::vector<Elem> comps;
    for (const auto& e : ext) comps.push_back(e.map(base_elem));
    return make(comps);
}

PointsContext points_context(const LocalFieldPtr& base,
                             std::shared_ptr<const gf::PerfRing> ring) {
    PointsContext ctx;
    ctx.base = base;
    ctx.test_ring = ring;
    for (const auto& comp : ring->components) ctx.ext.push_back(base->extend_residue(comp));
    return ctx;
}

SplitCheckReport points_split_check(const LocalFieldPtr& base,
                                    std::shared_ptr<const gf::PerfRing> ring, long samples,
                                    std::uint64_t seed) {
    SplitCheckReport rep;
    auto ctx = points_context(base, ring);
    Rng rng(seed);
    rep.samples = samples;

    auto random_point = [&](bool unit_only) {
        std::vector<Elem> comps;
        for (const auto& e : ctx.ext) {
            const auto& f = e.field;
            const auto& k = f->residue_field();
            long lead = unit_only ? 0 : rng.range(-2, 2);
            std::vector<gf::Elem> digits;
            long len = 5;
            digits.push_back(1 + rng.below(k->size() - 1));  // nonzero lead digit
            for (long i = 1; i < len; ++i) digits.push_back(rng.below(k->size()));
            comps.push_back(f->from_digits(lead, digits));
        }
        return ctx.make(comps);
    };

    rep.valuation_well_defined = true;
    rep.kernel_is_units = true;
    rep.section_splits = true;
    rep.valuation_additive = true;

    for (long s = 0; s < samples; ++s) {
        RingPoint x = random_point(false), y = random_point(false);
        for (std::size_t c = 0; c < ctx.ext.size(); ++c) {
            const auto& f = ctx.ext[c].field;
            auto vx = f->valuation(x.components[c]);
            auto vy = f->valuation(y.components[c]);
            if (!vx || !vy) {
                rep.valuation_well_defined = false;
                continue;
            }
            // valuation is stable under rebuilding from the digit expansion
            auto d = f->to_digits(x.components[c]);
            Elem rebuilt = f->from_digits(d.lead, d.digits, x.components[c].prec);
            if (!f->equal(rebuilt, x.components[c]) || f->valuation(rebuilt) != vx)
                rep.valuation_well_defined = false;
            // additivity
            auto vxy = f->valuation(f->mul(x.components[c], y.components[c]));
            if (!vxy || *vxy != *vx + *vy) rep.valuation_additive = false;
            // kernel of valuation = units: v = 0 iff unit digit nonzero
            bool vzero = (*vx == 0);
            bool unit_digit = (d.lead == 0 && !d.digits.empty() && d.digits[0] != 0);
            if (vzero != unit_digit) rep.kernel_is_units = false;
        }
    }
    // the section n -> pi^n splits the valuation componentwise
    for (long trial = 0; trial < 5; ++trial) {
        for (std::size_t c = 0; c < ctx.ext.size(); ++c) {
            const auto& f = ctx.ext[c].field;
            long n = rng.range(-3, 3);
            Elem pin = f->mul_pi_power(f->one(), n);
            auto v = f->valuation(pin);
            if (!v || *v != n) rep.section_splits = false;
        }
    }
    return rep;
}

}  // namespace lcft::lf
