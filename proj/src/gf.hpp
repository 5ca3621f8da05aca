#pragma once

// Finite fields F_{p^m} in a polynomial basis over F_p, with deterministic
// canonical choices (defining polynomial, multiplicative generator, embeddings)
// so that every computation in the library is reproducible.
//
// Elements are plain integer codes: the base-p digit string of the coefficient
// vector. Code 0 is zero, code 1 is one, and codes enumerate the field.

#include "bigint.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace lcft::gf {

using Elem = std::uint64_t;

class Field {
  public:
    // Canonical field: first irreducible monic polynomial in code order.
    Field(long p, long m);
    // Explicit modulus: coefficients c_0..c_{m-1} of f = x^m + sum c_i x^i,
    // each in [0, p). Throws structure_error if not irreducible.
    Field(long p, std::vector<long> modulus_tail);

    long p() const { return p_; }
    long degree() const { return m_; }
    std::uint64_t size() const { return q_; }
    const std::vector<long>& modulus_tail() const { return mod_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(long a) const;  // prime-subfield element
    Elem from_coeffs(const std::vector<long>& c) const;
    std::vector<long> coeffs(Elem a) const;

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;
    Elem pow(Elem a, const Integer& e) const;
    Elem frobenius(Elem a) const { return pow(a, p_); }
    Elem inv_frobenius(Elem a) const;  // unique p-th root
    long trace(Elem a) const;          // absolute trace to F_p

    // Canonical generator of the multiplicative group (least code of full order).
    Elem generator() const { return gen_; }
    // Discrete log to base generator(); a must be nonzero.
    std::uint64_t dlog(Elem a) const;

    bool equal_desc(const Field& o) const {
        return p_ == o.p_ && m_ == o.m_ && mod_ == o.mod_;
    }

    static bool is_irreducible(long p, const std::vector<long>& modulus_tail);

  private:
    void build();
    Elem mul_generic(Elem a, Elem b) const;

    long p_, m_;
    std::uint64_t q_;
    std::vector<long> mod_;  // tail coefficients of the monic modulus
    Elem gen_ = 0;
    std::vector<Elem> exp_;           // exp_[i] = gen^i, size q-1 (q <= table cap)
    std::vector<std::uint32_t> log_;  // log_[code] for nonzero codes
    bool tables_ = false;
};

using FieldPtr = std::shared_ptr<const Field>;

FieldPtr make_field(long p, long m);
FieldPtr make_field(long p, const std::vector<long>& modulus_tail);

// Embedding F_{p^a} -> F_{p^b} for a | b, sending the source basis element x to
// the least root of the source modulus in the target. Composable and canonical.
class Embedding {
  public:
    Embedding(FieldPtr src, FieldPtr dst);
    Elem map(Elem a) const;
    const FieldPtr& src() const { return src_; }
    const FieldPtr& dst() const { return dst_; }

  private:
    FieldPtr src_, dst_;
    std::vector<Elem> basis_img_;  // images of 1, x, x^2, ...
};

// A finite perfect ring: a finite product of finite fields of one characteristic.
struct PerfRing {
    std::vector<FieldPtr> components;

    explicit PerfRing(std::vector<FieldPtr> comps);
    long characteristic() const { return components.at(0)->p(); }
    std::size_t count() const { return components.size(); }
};

}  // namespace lcft::gf
