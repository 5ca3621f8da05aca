#pragma once

// Coefficient rings for local field arithmetic at finite precision:
//   ZqRing     W_M(F_q) realized as Z[x]/(p^M, f~), f~ the monic lift of the
//              field modulus; canonical Teichmuller digit expansions on demand.
//   SeriesRing F_q[[t]] / t^M for the equal-characteristic case.
// Both expose the same digit-oriented interface consumed by localfield.

#include "bigint.hpp"
#include "gf.hpp"

#include <memory>
#include <vector>

namespace lcft::zq {

class ZqRing;
using ZqPtr = std::shared_ptr<const ZqRing>;

class ZqRing : public std::enable_shared_from_this<ZqRing> {
  public:
    struct El {
        std::vector<Integer> c;  // polynomial coefficients in [0, p^M)
    };

    ZqRing(gf::FieldPtr k, long prec);

    const gf::FieldPtr& residue_field() const { return k_; }
    long precision() const { return prec_; }
    long p() const { return k_->p(); }
    const Integer& p_power() const { return pM_; }

    El zero() const { return El{std::vector<Integer>(m_)}; }
    El one() const;
    El from_int(const Integer& a) const;
    bool is_zero(const El& a) const;
    bool equal(const El& a, const El& b) const { return a.c == b.c; }

    El add(const El& a, const El& b) const;
    El sub(const El& a, const El& b) const;
    El neg(const El& a) const;
    El mul(const El& a, const El& b) const;
    El mul_int(const El& a, const Integer& s) const;
    El pow(const El& a, const Integer& e) const;

    gf::Elem residue(const El& a) const;  // reduction mod p
    long val(const El& a) const;          // p-adic valuation, prec if zero
    El mul_pk(const El& a, long k) const;
    El divexact_pk(const El& a, long k) const;
    El truncate(const El& a, long digits) const;  // kill digits >= `digits`

    El teichmuller(gf::Elem a) const;
    std::vector<gf::Elem> digits(const El& a) const;  // length prec
    El from_digits(const std::vector<gf::Elem>& d) const;
    El unit_inv(const El& a) const;  // val(a) = 0 required
    El frobenius(const El& a, long power = 1) const;  // lifts x -> x^(p^power)

    // Digit-wise extension of a residue embedding to the Witt coefficients.
    El map_into(const El& a, const ZqRing& target, const gf::Embedding& emb) const;

  private:
    El reduce(std::vector<Integer> raw) const;  // full product, reduce mod (f~, p^M)

    gf::FieldPtr k_;
    long prec_, m_;
    Integer pM_;
    std::vector<Integer> mod_;        // monic lift tail, length m_
    std::vector<El> teich_cache_;     // indexed by element code when q small
};

class SeriesRing;
using SeriesPtr = std::shared_ptr<const SeriesRing>;

class SeriesRing : public std::enable_shared_from_this<SeriesRing> {
  public:
    struct El {
        std::vector<gf::Elem> c;  // t-adic coefficients, length prec
    };

    SeriesRing(gf::FieldPtr k, long prec);

    const gf::FieldPtr& residue_field() const { return k_; }
    long precision() const { return prec_; }
    long p() const { return k_->p(); }

    El zero() const { return El{std::vector<gf::Elem>(prec_, 0)}; }
    El one() const;
    El from_int(const Integer& a) const;
    bool is_zero(const El& a) const;
    bool equal(const El& a, const El& b) const { return a.c == b.c; }

    El add(const El& a, const El& b) const;
    El sub(const El& a, const El& b) const;
    El neg(const El& a) const;
    El mul(const El& a, const El& b) const;
    El mul_int(const El& a, const Integer& s) const;

    gf::Elem residue(const El& a) const { return a.c[0]; }
    long val(const El& a) const;  // t-adic valuation, prec if zero
    El mul_tk(const El& a, long k) const;
    El divexact_tk(const El& a, long k) const;
    El truncate(const El& a, long digits) const;

    El teichmuller(gf::Elem a) const;
    std::vector<gf::Elem> digits(const El& a) const { return a.c; }
    El from_digits(const std::vector<gf::Elem>& d) const;
    El unit_inv(const El& a) const;
    El frobenius(const El& a, long power = 1) const;  // coefficientwise p^power

    El map_into(const El& a, const SeriesRing& target, const gf::Embedding& emb) const;

  private:
    gf::FieldPtr k_;
    long prec_;
};

}  // namespace lcft::zq
