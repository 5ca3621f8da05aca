#pragma once

// Exact integer linear algebra: Smith normal form, finitely generated abelian
// groups presented by relation matrices, subgroup quotients and homomorphisms.
// Everything here is pure and immutable after construction.

#include "bigint.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace lcft::abgroup {

class IntMatrix {
  public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}

    static IntMatrix identity(std::size_t n);
    static IntMatrix zero(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols); }
    static IntMatrix diagonal(const std::vector<Integer>& d);
    static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows);
    static IntMatrix from_columns(const std::vector<std::vector<Integer>>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Integer& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Integer& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    IntMatrix operator*(const IntMatrix& o) const;
    std::vector<Integer> apply(const std::vector<Integer>& v) const;  // matrix * column vector
    IntMatrix transposed() const;
    IntMatrix hstack(const IntMatrix& o) const;  // [this | o]
    std::vector<Integer> column(std::size_t j) const;
    std::vector<Integer> row(std::size_t i) const;
    bool is_zero() const;

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

  private:
    std::size_t rows_, cols_;
    std::vector<Integer> e_;
};

// u * m * v = d with d diagonal (divisibility chain d_1 | d_2 | ...), u, v unimodular.
// u_inv and v_inv are the exact inverses, accumulated during the reduction.
// Accumulation of each transform is optional to keep big kernels cheap.
struct SnfResult {
    IntMatrix d;
    std::optional<IntMatrix> u, u_inv, v, v_inv;
    std::size_t rank = 0;  // number of nonzero diagonal entries
};

struct SnfOptions {
    bool want_u = false;
    bool want_u_inv = false;
    bool want_v = false;
    bool want_v_inv = false;
};

SnfResult snf(const IntMatrix& m, const SnfOptions& opt = {true, true, true, true});

// Basis of the integer kernel lattice {x : m x = 0}, as columns.
IntMatrix kernel_basis(const IntMatrix& m);

// One solution of m x = b over the integers, if any.
std::optional<std::vector<Integer>> solve(const IntMatrix& m, const std::vector<Integer>& b);

// A finitely generated abelian group Z^g / column-lattice(presentation).
// Elements are classified in the original generator coordinates; canonical
// coordinates are least non-negative residues modulo the invariant factors
// (exact integers for the free factors, which are listed as 0 and come last).
class FinAbGroup {
  public:
    FinAbGroup() = default;  // trivial group on zero generators

    static FinAbGroup cokernel(std::size_t generators, const IntMatrix& relations);
    static FinAbGroup from_invariant_factors(const std::vector<Integer>& inv);
    static FinAbGroup trivial() { return FinAbGroup(); }

    const std::vector<Integer>& invariant_factors() const { return inv_; }
    std::size_t generator_count() const { return gens_; }  // ambient generators
    std::size_t rank() const { return inv_.size(); }       // canonical generators
    std::size_t free_rank() const;
    bool is_finite() const { return free_rank() == 0; }
    Integer order() const;  // 0 when infinite
    bool is_trivial() const { return inv_.empty(); }
    const IntMatrix& presentation() const { return rel_; }

    // Ambient coordinates -> canonical coordinates (reduced).
    std::vector<Integer> classify(const std::vector<Integer>& ambient) const;
    // Canonical coordinates -> a representative in ambient coordinates.
    std::vector<Integer> representative(const std::vector<Integer>& canonical) const;
    std::vector<Integer> reduce(std::vector<Integer> canonical) const;
    std::vector<Integer> add(const std::vector<Integer>& a, const std::vector<Integer>& b) const;
    std::vector<Integer> neg(const std::vector<Integer>& a) const;
    std::vector<Integer> scale(const Integer& k, const std::vector<Integer>& a) const;
    bool is_zero_class(const std::vector<Integer>& canonical) const;

    // All elements in canonical coordinates; throws if infinite or larger than cap.
    std::vector<std::vector<Integer>> elements(std::size_t cap = 200000) const;

    // amb / <gens>, same ambient coordinate system (gens in ambient coordinates).
    FinAbGroup quotient_by(const std::vector<std::vector<Integer>>& ambient_gens) const;

  private:
    std::size_t gens_ = 0;
    IntMatrix rel_;            // ambient presentation (gens_ x #relations)
    std::vector<Integer> inv_; // nonzero factors (divisibility chain) then zeros
    IntMatrix to_can_;         // rank x gens_
    IntMatrix from_can_;       // gens_ x rank
};

// snf-driven primitives shared by the group machinery.
FinAbGroup cokernel(const IntMatrix& m);  // Z^rows / column-lattice(m)
FinAbGroup subgroup_quotient(const FinAbGroup& amb,
                             const std::vector<std::vector<Integer>>& gens);
bool iso_check(const FinAbGroup& a, const FinAbGroup& b);

// Homomorphism between canonical presentations: phi(c) = classify(matrix * c).
class AbHom {
  public:
    AbHom() = default;
    AbHom(FinAbGroup domain, FinAbGroup codomain, IntMatrix matrix_on_canonical);

    const FinAbGroup& domain() const { return dom_; }
    const FinAbGroup& codomain() const { return cod_; }
    const IntMatrix& matrix() const { return m_; }

    bool well_defined() const;  // relations map into relations
    std::vector<Integer> apply(const std::vector<Integer>& canonical) const;
    AbHom compose(const AbHom& inner) const;  // this o inner

    // Generators (canonical coordinates of the domain) of the kernel subgroup.
    std::vector<std::vector<Integer>> kernel_generators() const;
    std::vector<std::vector<Integer>> image_generators() const;  // in codomain
    FinAbGroup kernel_group() const;
    Integer image_order() const;
    bool is_zero() const;

  private:
    FinAbGroup dom_, cod_;
    IntMatrix m_;
};

// Subgroup utilities on canonical coordinates of g.
Integer subgroup_order(const FinAbGroup& g, const std::vector<std::vector<Integer>>& gens);
bool subgroup_contains(const FinAbGroup& g, const std::vector<std::vector<Integer>>& gens,
                       const std::vector<Integer>& x);

}  // namespace lcft::abgroup
