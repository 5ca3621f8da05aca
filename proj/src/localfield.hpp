#pragma once

// Complete discrete valuation fields with finite residue field, at finite
// precision. A field is an unramified layer (fraction field of W(F_q), or
// F_q((t))) optionally extended by one Eisenstein polynomial; towers with
// several Eisenstein steps are flattened by the extension module before they
// reach this layer.
//
// Elements are pi^shift * (c_0 + c_1 pi + ... + c_{e-1} pi^{e-1}) with integral
// coefficients in the unramified coefficient ring, plus an absolute precision
// bound (the element is known modulo pi^prec). Zero-to-precision is a distinct
// observable state and is never promoted to an exact zero.

#include "abgroup.hpp"
#include "bigint.hpp"
#include "gf.hpp"
#include "zq.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace lcft::lf {

enum class Kind { mixed, equal };

// One coefficient of the Eisenstein bracket: an element of W_M(F_q) or of
// F_q[[t]]/t^M depending on the field kind.
using CoeffEl = std::variant<zq::ZqRing::El, zq::SeriesRing::El>;

class CoeffRing {
  public:
    CoeffRing() = default;
    explicit CoeffRing(zq::ZqPtr r) : impl_(std::move(r)) {}
    explicit CoeffRing(zq::SeriesPtr r) : impl_(std::move(r)) {}

    Kind kind() const;
    const gf::FieldPtr& residue_field() const;
    long precision() const;
    long p() const;

    CoeffEl zero() const;
    CoeffEl one() const;
    CoeffEl from_int(const Integer& a) const;
    bool is_zero(const CoeffEl& a) const;
    bool equal(const CoeffEl& a, const CoeffEl& b) const;

    CoeffEl add(const CoeffEl& a, const CoeffEl& b) const;
    CoeffEl sub(const CoeffEl& a, const CoeffEl& b) const;
    CoeffEl neg(const CoeffEl& a) const;
    CoeffEl mul(const CoeffEl& a, const CoeffEl& b) const;

    gf::Elem residue(const CoeffEl& a) const;
    long val(const CoeffEl& a) const;              // uniformizer-adic valuation
    CoeffEl shift_up(const CoeffEl& a, long k) const;    // * w^k
    CoeffEl shift_down(const CoeffEl& a, long k) const;  // exact / w^k
    CoeffEl truncate(const CoeffEl& a, long digits) const;
    CoeffEl teichmuller(gf::Elem a) const;
    std::vector<gf::Elem> digits(const CoeffEl& a) const;
    CoeffEl from_digits(const std::vector<gf::Elem>& d) const;
    CoeffEl unit_inv(const CoeffEl& a) const;
    CoeffEl frobenius(const CoeffEl& a, long power) const;
    CoeffEl map_into(const CoeffEl& a, const CoeffRing& target,
                     const gf::Embedding& emb) const;

    const std::variant<zq::ZqPtr, zq::SeriesPtr>& impl() const { return impl_; }

  private:
    std::variant<zq::ZqPtr, zq::SeriesPtr> impl_;
};

class LocalField;
using LocalFieldPtr = std::shared_ptr<const LocalField>;

struct Elem {
    LocalFieldPtr field;
    long shift = 0;               // power of pi factored out (may be negative)
    long prec = 0;                // absolute precision: known modulo pi^prec
    std::vector<CoeffEl> poly;    // e coefficients, integral
    bool zero_to_prec = false;    // all digits below prec vanish
};

class LocalField : public std::enable_shared_from_this<LocalField> {
  public:
    // Unramified base: Frac W(F_q) in mixed characteristic, F_q((t)) in equal.
    static LocalFieldPtr make_base(Kind kind, gf::FieldPtr residue, long precision_pi);
    // Eisenstein step over an unramified base (e >= 2). `tail` holds
    // c_0..c_{e-1} of E = x^e + c_{e-1} x^{e-1} + ... + c_0 as elements of the
    // coefficient ring; val(c_0) must be exactly 1 and val(c_i) >= 1.
    static LocalFieldPtr make_eisenstein(const LocalFieldPtr& unram_base,
                                         const std::vector<CoeffEl>& tail);

    Kind kind() const { return kind_; }
    const gf::FieldPtr& residue_field() const { return residue_; }
    const CoeffRing& coeff() const { return coeff_; }
    long ram_index() const { return e_; }        // over the unramified layer
    long precision_pi() const { return prec_pi_; }  // working precision (pi digits)
    bool is_base() const { return e_ == 1; }
    const std::vector<CoeffEl>& eisenstein_tail() const { return tail_; }
    // the unramified layer this field was built over (itself when e = 1)
    LocalFieldPtr unramified_layer() const;

    // -- element factories --
    Elem zero(long prec = -1) const;  // -1: working precision
    Elem one(long prec = -1) const;
    Elem pi(long prec = -1) const;    // the distinguished prime
    Elem from_int(const Integer& a, long prec = -1) const;
    Elem teich(gf::Elem a, long prec = -1) const;
    Elem from_coeff(const CoeffEl& c, long prec = -1) const;
    Elem from_digits(long lead, const std::vector<gf::Elem>& digits, long prec = -1) const;

    // -- arithmetic (pure; inputs must belong to this field) --
    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem mul_pi_power(const Elem& a, long k) const;
    Elem inv(const Elem& a) const;
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
    Elem pow(const Elem& a, const Integer& n) const;

    // valuation; nullopt means "at least the element's precision"
    std::optional<long> valuation(const Elem& a) const;
    // x = pi^n * u with v(u) = 0; throws on zero-to-precision input
    std::pair<long, Elem> unit_decompose(const Elem& a) const;
    gf::Elem residue(const Elem& a) const;  // of a valuation-0 element
    bool equal(const Elem& a, const Elem& b) const;  // to min precision
    bool is_zero(const Elem& a) const { return a.zero_to_prec; }

    // canonical Teichmuller digit expansion a_v, a_{v+1}, ..., a_{prec-1}
    struct DigitExpansion {
        long lead;
        std::vector<gf::Elem> digits;  // digits[i] is the coefficient of pi^(lead+i)
        long prec;
    };
    DigitExpansion to_digits(const Elem& a) const;
    std::string show(const Elem& a) const;

    // coefficientwise Frobenius lift (legitimate as a field map only when the
    // Eisenstein tail is fixed by it; the extension layer checks that)
    Elem coeff_frobenius(const Elem& a, long power) const;

    // same field over a larger residue field, with the element transport
    struct ScalarExtension {
        LocalFieldPtr field;
        std::shared_ptr<gf::Embedding> emb;
        std::function<Elem(const Elem&)> map;
    };
    ScalarExtension extend_residue(gf::FieldPtr new_residue) const;

    Elem with_precision(const Elem& a, long prec) const;  // truncate/extend bound

    // bracket coordinates over the coefficient ring with the shift folded in;
    // requires an integral element (valuation >= 0)
    std::vector<CoeffEl> integral_coordinates(const Elem& a) const;
    Elem from_bracket(std::vector<CoeffEl> poly, long shift, long prec = -1) const;

  private:
    LocalField() = default;

    Elem normalized(Elem x) const;               // factor w-powers into shift
    std::vector<CoeffEl> mul_mod_e(const std::vector<CoeffEl>& a,
                                   const std::vector<CoeffEl>& b) const;
    std::vector<CoeffEl> times_pi(std::vector<CoeffEl> a) const;  // * x mod E
    long bracket_val(const std::vector<CoeffEl>& a) const;

    Kind kind_ = Kind::mixed;
    gf::FieldPtr residue_;
    CoeffRing coeff_;
    long e_ = 1;
    long prec_pi_ = 0;
    std::vector<CoeffEl> tail_;
};

// U_K / U_K^n with maps in both directions. Generators: the Teichmuller lift
// of the residue multiplicative generator, then 1 + omega(b_i) pi^j per level
// j = 1..n-1 and basis element b_i of the residue field over F_p.
class UnitGroupQuotient {
  public:
    UnitGroupQuotient(LocalFieldPtr field, long level);

    const abgroup::FinAbGroup& group() const { return group_; }
    long level() const { return n_; }
    const LocalFieldPtr& field() const { return field_; }
    std::size_t generator_count() const { return gens_.size(); }
    const Elem& generator(std::size_t i) const { return gens_[i]; }

    // canonical coordinates of a unit
    std::vector<Integer> to_group(const Elem& u) const;
    // canonical digit-form representative of a class
    Elem from_group(const std::vector<Integer>& canonical) const;
    // raw generator-exponent coordinates (ambient presentation coordinates)
    std::vector<Integer> generator_coordinates(const Elem& u) const;

  private:
    LocalFieldPtr field_;
    long n_;
    std::vector<Elem> gens_;
    abgroup::FinAbGroup group_;
};

// componentwise points of the field over a finite perfect test ring
struct RingPoint {
    std::shared_ptr<const gf::PerfRing> test_ring;
    std::vector<LocalFieldPtr> component_fields;  // base extended to each component
    std::vector<Elem> components;
};

struct PointsContext {
    LocalFieldPtr base;
    std::shared_ptr<const gf::PerfRing> test_ring;
    std::vector<LocalField::ScalarExtension> ext;  // one per ring component

    RingPoint make(const std::vector<Elem>& comps) const;
    RingPoint transport(const Elem& base_elem) const;  // diagonal image
};

PointsContext points_context(const LocalFieldPtr& base,
                             std::shared_ptr<const gf::PerfRing> ring);

// verification report for the split valuation sequence on R-points
struct SplitCheckReport {
    bool valuation_well_defined = false;
    bool kernel_is_units = false;
    bool section_splits = false;
    bool valuation_additive = false;
    long samples = 0;
    bool passed() const {
        return valuation_well_defined && kernel_is_units && section_splits && valuation_additive;
    }
};

SplitCheckReport points_split_check(const LocalFieldPtr& base,
                                    std::shared_ptr<const gf::PerfRing> ring, long samples,
                                    std::uint64_t seed);

}  // namespace lcft::lf
