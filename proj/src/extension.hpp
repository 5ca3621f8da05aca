#pragma once

// Finite extensions L/K of local fields as towers of unramified and Eisenstein
// steps, normalized to (one unramified step, one Eisenstein polynomial over the
// maximal unramified subextension). Provides Hensel root finding, the Galois
// group acting through generator images, norms/traces, the tensor splitting
// O_{K_r} (x)_{O_K} O_L ~= prod over residue embeddings, and Weil restriction
// on points.

#include "abgroup.hpp"
#include "localfield.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace lcft::ext {

// Eisenstein coefficient in a tower description: a plain integer, or a digit
// expansion (polynomial-basis coordinates per digit) in the current field.
struct CoeffSpec {
    bool is_int = true;
    Integer n = 0;
    long lead = 0;
    std::vector<std::vector<long>> digit_coords;

    static CoeffSpec integer(Integer v) {
        CoeffSpec c;
        c.is_int = true;
        c.n = std::move(v);
        return c;
    }
    static CoeffSpec digits(long lead, std::vector<std::vector<long>> coords) {
        CoeffSpec c;
        c.is_int = false;
        c.lead = lead;
        c.digit_coords = std::move(coords);
        return c;
    }
};

struct TowerStep {
    enum class Type { unramified, eisenstein };
    Type type = Type::unramified;
    long f = 1;                    // unramified residue degree
    std::vector<CoeffSpec> tail;   // c_0..c_{e-1} of a monic Eisenstein polynomial

    static TowerStep unram(long f) {
        TowerStep s;
        s.type = Type::unramified;
        s.f = f;
        return s;
    }
    static TowerStep eisenstein(std::vector<CoeffSpec> tail) {
        TowerStep s;
        s.type = Type::eisenstein;
        s.tail = std::move(tail);
        return s;
    }
};

class Extension;
using ExtensionPtr = std::shared_ptr<const Extension>;

class Extension {
  public:
    static ExtensionPtr make(lf::LocalFieldPtr base, const std::vector<TowerStep>& steps);
    // Eisenstein step with already-evaluated coefficients of the base field.
    static ExtensionPtr make_eisenstein(lf::LocalFieldPtr base,
                                        const std::vector<lf::Elem>& tail);

    const lf::LocalFieldPtr& base_field() const { return base_; }
    const lf::LocalFieldPtr& mid_field() const { return mid_; }  // max unramified subext
    const lf::LocalFieldPtr& top_field() const { return top_; }
    long e() const { return e_; }
    long f() const { return f_; }
    long degree() const { return e_ * f_; }
    const lf::Elem& pi_top() const { return pi_top_; }

    lf::Elem embed_base(const lf::Elem& x) const { return base_to_top_(x); }
    lf::Elem embed_mid(const lf::Elem& x) const { return mid_to_top_(x); }
    // express a top element in a subfield, if it lies there to precision
    std::optional<lf::Elem> descend_to_base(const lf::Elem& x) const;
    std::optional<lf::Elem> descend_to_mid(const lf::Elem& x) const;

    // the extension M/K (trivial Eisenstein part)
    ExtensionPtr unramified_part() const;

  private:
    friend ExtensionPtr make_extension_internal(lf::LocalFieldPtr, const std::vector<TowerStep>&);
    Extension() = default;

    lf::LocalFieldPtr base_, mid_, top_;
    long e_ = 1, f_ = 1;
    lf::Elem pi_top_;
    std::function<lf::Elem(const lf::Elem&)> base_to_top_, mid_to_top_;
    std::vector<TowerStep> steps_;
};

// polynomial over a local field, coefficients low degree first
using FieldPoly = std::vector<lf::Elem>;

lf::Elem poly_eval(const lf::LocalFieldPtr& f, const FieldPoly& p, const lf::Elem& x);
FieldPoly poly_derivative(const lf::LocalFieldPtr& f, const FieldPoly& p);

// All roots of p in the field, to absolute precision prec. Requires a unit
// leading coefficient; digit-by-digit branching with Newton acceleration.
std::vector<lf::Elem> hensel_roots(const lf::LocalFieldPtr& f, const FieldPoly& p, long prec);

// one automorphism: Frobenius power on the unramified layer + image of pi_L
struct GaloisElem {
    long frob_power = 0;   // as a power of the residue Frobenius of k_L over k_K
    lf::Elem pi_image;
};

class GaloisGroup {
  public:
    std::size_t order() const { return elems_.size(); }
    const GaloisElem& elem(std::size_t i) const { return elems_[i]; }
    std::size_t identity() const { return id_; }
    std::size_t compose(std::size_t a, std::size_t b) const { return table_[a][b]; }
    std::size_t inverse(std::size_t a) const;
    const std::vector<std::vector<std::size_t>>& table() const { return table_; }
    bool is_abelian() const;

    lf::Elem apply(std::size_t i, const lf::Elem& x) const;

    // report for non-Galois input
    bool galois = false;
    long missing_conjugates = 0;

  private:
    friend GaloisGroup galois_group(const ExtensionPtr&);
    ExtensionPtr ext_;
    std::vector<GaloisElem> elems_;
    std::vector<std::vector<std::size_t>> table_;
    std::size_t id_ = 0;
};

// throws structure_error (naming the missing conjugates) if not Galois
GaloisGroup galois_group(const ExtensionPtr& ext);

// Norm and trace down to the base (product over the Galois group when the
// extension is Galois, multiplication-matrix determinant/trace per tower step
// otherwise). v_K(norm(x)) = f * v_L(x).
lf::Elem norm(const ExtensionPtr& ext, const lf::Elem& x);
lf::Elem trace(const ExtensionPtr& ext, const lf::Elem& x);

ExtensionPtr max_unramified_subext(const ExtensionPtr& ext);

// The splitting of O_{K_r} (x)_{O_K} O_L into f factors indexed by the
// embeddings of k' into k_r, with the two commuting actions in component form.
struct TensorSplit {
    ExtensionPtr ext;
    long r = 1;
    lf::LocalFieldPtr base_r;                  // K_r
    std::vector<lf::LocalFieldPtr> factors;    // F_l = K_r(pi_L) via embedding l
    std::vector<ExtensionPtr> factor_ext;      // F_l / K_r
    std::vector<gf::Elem> u_roots;             // Teichmuller images of the k' generator

    // transport of an L-element into factor l (coefficientwise embedding)
    lf::Elem transport(std::size_t l, const lf::Elem& x) const;
    // K_r into each factor
    lf::Elem embed_base_r(std::size_t l, const lf::Elem& x) const;

    // sigma in Gal(L/K): component l of sigma(z) = z_{src}(x <- pi_img):
    struct ComponentMap {
        std::size_t src;
        lf::Elem pi_img;  // in factor l
    };
    std::vector<std::vector<ComponentMap>> sigma_maps;  // [sigma][l]
    // Frobenius of k_r/k: component l of F(z) = phi(z_{frob_src[l]})
    std::vector<std::size_t> frob_src;
    long frob_coeff_power = 0;  // residue Frobenius power applied coefficientwise

    std::size_t factor_count() const { return factors.size(); }
    std::vector<lf::Elem> apply_sigma(std::size_t sigma,
                                      const std::vector<lf::Elem>& z) const;
    std::vector<lf::Elem> apply_frobenius(const std::vector<lf::Elem>& z) const;
};

struct TensorDecomposeReport {
    long factor_count = 0;
    bool idempotents_split = false;      // e_i e_j = delta_ij, sum = 1
    bool galois_action_consistent = false;  // component maps respect the group law
    bool frobenius_permutes = false;     // k_r/k-Frobenius permutes factors cyclically
    bool actions_commute = false;        // the two actions commute componentwise
    bool passed() const {
        return idempotents_split && galois_action_consistent && frobenius_permutes &&
               actions_commute;
    }
};

TensorSplit tensor_split(const ExtensionPtr& ext, const GaloisGroup& g, long r);
TensorDecomposeReport tensor_decompose(const ExtensionPtr& ext, const GaloisGroup& g, long r);

// Weil restriction on points: F(R (x)_k k') for F = additive group,
// multiplicative group, or U_L/U_L^n over k'.
enum class PointFunctor { additive, multiplicative, unit_quotient };

abgroup::FinAbGroup weil_restriction_points(const gf::FieldPtr& k, const gf::FieldPtr& kprime,
                                            PointFunctor functor,
                                            const std::shared_ptr<const gf::PerfRing>& r,
                                            const lf::LocalFieldPtr& l_over_kprime = nullptr,
                                            long unit_level = 0);

}  // namespace lcft::ext
