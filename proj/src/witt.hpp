#pragma once

// Truncated Witt vectors over finite perfect rings. Arithmetic runs through
// the universal addition/multiplication polynomials, solved once per (p, n)
// from the ghost equations over exact integers and reduced mod p. The cache
// is write-once behind a mutex and safe for concurrent readers.

#include "abgroup.hpp"
#include "bigint.hpp"
#include "gf.hpp"
#include "zq.hpp"

#include <memory>
#include <vector>

namespace lcft::witt {

// Compiled structure polynomials for one digit: sum of coeff * prod vars^exp,
// with coefficients already reduced into [0, p).
struct CompiledPoly {
    struct Term {
        long coeff;
        std::vector<unsigned> exp;  // exponent per variable
    };
    std::size_t vars = 0;
    std::vector<Term> terms;
};

struct WittLaws {
    long p, n;
    std::vector<CompiledPoly> sum;      // digit i in vars x_0..x_i, y_0..y_i
    std::vector<CompiledPoly> product;  // same variable layout
    std::vector<CompiledPoly> negation; // vars x_0..x_i only
};

// Cached; computed by recursive ghost-equation solving over Z.
const WittLaws& laws(long p, long n);

class WittVector {
  public:
    WittVector(std::shared_ptr<const gf::PerfRing> ring, long length);

    const std::shared_ptr<const gf::PerfRing>& ring() const { return ring_; }
    long length() const { return n_; }
    // digit i of component c
    gf::Elem digit(std::size_t c, long i) const { return d_[c][i]; }
    void set_digit(std::size_t c, long i, gf::Elem v) { d_[c][i] = v; }

    bool operator==(const WittVector& o) const { return d_ == o.d_; }

  private:
    std::shared_ptr<const gf::PerfRing> ring_;
    long n_;
    std::vector<std::vector<gf::Elem>> d_;
};

WittVector witt_zero(std::shared_ptr<const gf::PerfRing> ring, long n);
WittVector witt_one(std::shared_ptr<const gf::PerfRing> ring, long n);
WittVector witt_add(const WittVector& a, const WittVector& b);
WittVector witt_mul(const WittVector& a, const WittVector& b);
WittVector witt_neg(const WittVector& a);
// Teichmuller lift (x, 0, ..., 0); one element per ring component.
WittVector teichmuller(std::shared_ptr<const gf::PerfRing> ring,
                       const std::vector<gf::Elem>& x, long n);
WittVector frobenius(const WittVector& a);
WittVector verschiebung(const WittVector& a);

// Conversions between W_n(F_q) (single-field component) and the coefficient
// ring Z[x]/(p^n, f~): the canonical ring isomorphism for perfect residue
// fields, (a_0, ..., a_{n-1}) -> sum p^i omega(a_i^{p^-i}).
zq::ZqRing::El to_coefficient_ring(const WittVector& a, std::size_t component,
                                   const zq::ZqRing& zq);
WittVector from_coefficient_ring(std::shared_ptr<const gf::PerfRing> ring,
                                 std::size_t component, const zq::ZqRing& zq,
                                 const zq::ZqRing::El& z);

// A finite-length W(k)-module: direct sum of cyclic factors W(k)/p^{l_i}.
// Every finite W(k)-module has this shape (structure theorem over the
// complete DVR W(k)).
struct ProfiniteModule {
    gf::FieldPtr k;
    std::vector<long> cyclic_lengths;  // each >= 1

    long length() const;  // max of the cyclic lengths
};

// Points of the module's affine realization on a finite perfect test ring:
// the finite abelian group  (+)_i W_{l_i}(R), with a classification map.
struct GreenbergPoints {
    abgroup::FinAbGroup group;
    // one Witt vector per cyclic factor (each over the full ring R)
    std::vector<Integer> classify(const std::vector<WittVector>& element) const;

    // layout: per cyclic factor, per ring component, the coefficient ring used
    ProfiniteModule mod;
    std::shared_ptr<const gf::PerfRing> ring;
    std::vector<std::vector<zq::ZqPtr>> coeff;  // [factor][component]
};

GreenbergPoints greenberg_points(const ProfiniteModule& m,
                                 std::shared_ptr<const gf::PerfRing> r);

}  // namespace lcft::witt
