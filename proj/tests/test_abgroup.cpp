#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "abgroup.hpp"

#include <map>
#include <vector>

using namespace lcft;
using namespace lcft::abgroup;

namespace {

// Test-side oracle: determinant by cofactor expansion, no shared code with snf.
Integer det_cofactor(const IntMatrix& m) {
    std::size_t n = m.rows();
    if (n == 0) return 1;
    if (n == 1) return m.at(0, 0);
    Integer acc = 0;
    int sign = 1;
    for (std::size_t j = 0; j < n; ++j) {
        IntMatrix sub(n - 1, n - 1);
        for (std::size_t a = 1; a < n; ++a) {
            std::size_t cc = 0;
            for (std::size_t b = 0; b < n; ++b) {
                if (b == j) continue;
                sub.at(a - 1, cc++) = m.at(a, b);
            }
        }
        if (m.at(0, j) != 0) acc += sign * m.at(0, j) * det_cofactor(sub);
        sign = -sign;
    }
    return acc;
}

// k-th determinantal divisor: gcd of all k x k minors.
Integer det_divisor(const IntMatrix& m, std::size_t k) {
    std::vector<std::size_t> ri(k), ci(k);
    Integer g = 0;
    std::vector<std::size_t> rows, cols;
    std::vector<std::size_t> rsel, csel;
    // enumerate k-subsets of rows and columns
    std::vector<std::size_t> rcomb(k), ccomb(k);
    for (std::size_t i = 0; i < k; ++i) rcomb[i] = i;
    auto next_comb = [](std::vector<std::size_t>& c, std::size_t n) {
        std::size_t k2 = c.size();
        for (std::size_t i = k2; i-- > 0;) {
            if (c[i] + (k2 - i) < n + 0) {
                ++c[i];
                for (std::size_t j = i + 1; j < k2; ++j) c[j] = c[j - 1] + 1;
                return c[k2 - 1] < n;
            }
        }
        return false;
    };
    bool more_r = k <= m.rows();
    while (more_r) {
        for (std::size_t i = 0; i < k; ++i) ccomb[i] = i;
        bool more_c = k <= m.cols();
        while (more_c) {
            IntMatrix sub(k, k);
            for (std::size_t a = 0; a < k; ++a)
                for (std::size_t b = 0; b < k; ++b) sub.at(a, b) = m.at(rcomb[a], ccomb[b]);
            g = gcd(g, det_cofactor(sub));
            more_c = next_comb(ccomb, m.cols());
        }
        more_r = next_comb(rcomb, m.rows());
    }
    return abs(g);
}

// Invariant factors (without dropping 1s) via determinantal divisors.
std::vector<Integer> invariants_by_minors(const IntMatrix& m) {
    std::size_t maxk = std::min(m.rows(), m.cols());
    std::vector<Integer> divisors(maxk + 1);
    divisors[0] = 1;
    std::size_t rank = 0;
    for (std::size_t k = 1; k <= maxk; ++k) {
        divisors[k] = det_divisor(m, k);
        if (divisors[k] == 0) break;
        rank = k;
    }
    std::vector<Integer> inv;
    for (std::size_t k = 1; k <= rank; ++k) inv.push_back(divisors[k] / divisors[k - 1]);
    for (std::size_t k = rank; k < m.rows(); ++k) inv.push_back(0);
    return inv;
}

IntMatrix mat(std::vector<std::vector<Integer>> rows) { return IntMatrix::from_rows(rows); }

// Membership of x in the column lattice of a full-rank square matrix, by
// Cramer's rule (independent of snf/solve).
bool in_lattice_cramer(const IntMatrix& basis, const std::vector<Integer>& x) {
    Integer d = det_cofactor(basis);
    REQUIRE(d != 0);
    std::size_t n = basis.rows();
    for (std::size_t j = 0; j < n; ++j) {
        IntMatrix rep = basis;
        for (std::size_t i = 0; i < n; ++i) rep.at(i, j) = x[i];
        if (det_cofactor(rep) % d != 0) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("snf matches determinantal-divisor oracle on the worked example") {
    IntMatrix m = mat({{2, 4}, {6, 8}});
    auto s = snf(m);
    CHECK(s.d.at(0, 0) == 2);
    CHECK(s.d.at(1, 1) == 4);
    CHECK(s.d.at(0, 1) == 0);
    CHECK(s.d.at(1, 0) == 0);
    auto inv = invariants_by_minors(m);
    REQUIRE(inv.size() == 2);
    CHECK(inv[0] == 2);
    CHECK(inv[1] == 4);
}

TEST_CASE("snf fixed points") {
    auto s1 = snf(IntMatrix::identity(3));
    CHECK(s1.d == IntMatrix::identity(3));
    auto s2 = snf(IntMatrix::zero(2, 2));
    CHECK(s2.d.is_zero());
    CHECK(s2.rank == 0);
}

TEST_CASE("snf transform identity u*m*v = d on random matrices") {
    Rng rng(7);
    for (int iter = 0; iter < 60; ++iter) {
        std::size_t r = 1 + rng.below(4), c = 1 + rng.below(4);
        IntMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rng.range(-20, 20);
        auto s = snf(m);
        CHECK((*s.u) * m * (*s.v) == s.d);
        CHECK((*s.u) * (*s.u_inv) == IntMatrix::identity(r));
        CHECK((*s.v) * (*s.v_inv) == IntMatrix::identity(c));
        // divisibility chain
        for (std::size_t i = 0; i + 1 < std::min(r, c); ++i) {
            if (s.d.at(i + 1, i + 1) != 0) {
                REQUIRE(s.d.at(i, i) != 0);
                CHECK(s.d.at(i + 1, i + 1) % s.d.at(i, i) == 0);
            }
        }
        // invariant factors agree with the independent minor oracle
        auto inv = invariants_by_minors(m);
        std::size_t k = 0;
        for (std::size_t i = 0; i < std::min(r, c); ++i, ++k)
            if (i < inv.size() && inv[i] != 0) CHECK(s.d.at(i, i) == inv[i]);
    }
}

TEST_CASE("cokernel worked examples") {
    CHECK(cokernel(mat({{2, 0}, {0, 0}})).invariant_factors() ==
          std::vector<Integer>{2, 0});
    CHECK(cokernel(mat({{4, 6}, {6, 9}})).invariant_factors() == std::vector<Integer>{0});
    CHECK(cokernel(IntMatrix(2, 0)).invariant_factors() == std::vector<Integer>{0, 0});
}

TEST_CASE("cokernel order against exhaustive lattice enumeration") {
    Rng rng(11);
    int done = 0;
    while (done < 25) {
        IntMatrix m(2, 2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) m.at(i, j) = rng.range(-9, 9);
        Integer d = abs(det_cofactor(m));
        if (d == 0 || d > 60) continue;
        ++done;
        FinAbGroup g = cokernel(m);
        REQUIRE(g.order() == d);
        // lattice points of the box [0, o)^2: exactly o^2 / o = o of them
        long o = to_long(d);
        long count = 0;
        for (long a = 0; a < o; ++a)
            for (long b = 0; b < o; ++b)
                if (in_lattice_cramer(m, {Integer(a), Integer(b)})) ++count;
        CHECK(count == o);
    }
}

TEST_CASE("classify is a homomorphism onto canonical coordinates") {
    IntMatrix m = mat({{2, 4}, {6, 8}});
    FinAbGroup g = cokernel(m);
    REQUIRE(g.order() == 8);
    // classify must kill exactly the lattice
    long hits = 0;
    for (long a = -8; a <= 8; ++a)
        for (long b = -8; b <= 8; ++b) {
            auto c = g.classify({Integer(a), Integer(b)});
            bool zero = g.is_zero_class(c);
            bool member = in_lattice_cramer(m, {Integer(a), Integer(b)});
            CHECK(zero == member);
            if (zero) ++hits;
        }
    CHECK(hits > 0);
    // representative is a section
    for (const auto& e : g.elements()) {
        CHECK(g.classify(g.representative(e)) == e);
    }
}

TEST_CASE("subgroup_quotient worked examples") {
    FinAbGroup z4 = FinAbGroup::from_invariant_factors({4});
    CHECK(subgroup_quotient(z4, {{Integer(2)}}).invariant_factors() ==
          std::vector<Integer>{2});

    FinAbGroup v4 = FinAbGroup::from_invariant_factors({2, 2});
    CHECK(subgroup_quotient(v4, {}).invariant_factors() == std::vector<Integer>{2, 2});

    FinAbGroup z = FinAbGroup::from_invariant_factors({0});
    CHECK(subgroup_quotient(z, {{Integer(6)}, {Integer(10)}}).invariant_factors() ==
          std::vector<Integer>{2});
}

TEST_CASE("subgroup_quotient invariant under redundant generators") {
    Rng rng(3);
    for (int iter = 0; iter < 40; ++iter) {
        std::vector<Integer> inv = {Integer(2 + 2 * rng.below(4)), Integer(0)};
        FinAbGroup amb = FinAbGroup::from_invariant_factors(inv);
        std::vector<std::vector<Integer>> gens;
        for (int k = 0; k < 2; ++k)
            gens.push_back({Integer(rng.range(-6, 6)), Integer(rng.range(-6, 6))});
        FinAbGroup q1 = subgroup_quotient(amb, gens);
        // add redundant combinations of the same generators
        auto red = gens;
        std::vector<Integer> comb(2);
        for (int i = 0; i < 2; ++i) comb[i] = 3 * gens[0][i] - 2 * gens[1][i];
        red.push_back(comb);
        red.push_back(gens[0]);
        FinAbGroup q2 = subgroup_quotient(amb, red);
        CHECK(iso_check(q1, q2));
    }
}

TEST_CASE("iso_check worked examples") {
    CHECK_FALSE(iso_check(FinAbGroup::from_invariant_factors({2, 2}),
                          FinAbGroup::from_invariant_factors({4})));
    CHECK(iso_check(FinAbGroup::from_invariant_factors({6}),
                    FinAbGroup::from_invariant_factors({2, 3})));
    CHECK(iso_check(FinAbGroup::trivial(), FinAbGroup::trivial()));
}

TEST_CASE("hom kernel and image bookkeeping") {
    // multiplication by 2: Z/4 -> Z/4, kernel Z/2, image Z/2
    FinAbGroup z4 = FinAbGroup::from_invariant_factors({4});
    AbHom mul2(z4, z4, mat({{2}}));
    CHECK(mul2.well_defined());
    CHECK(mul2.kernel_group().invariant_factors() == std::vector<Integer>{2});
    CHECK(mul2.image_order() == 2);

    // projection Z -> Z/3
    FinAbGroup z = FinAbGroup::from_invariant_factors({0});
    FinAbGroup z3 = FinAbGroup::from_invariant_factors({3});
    AbHom pr(z, z3, mat({{1}}));
    CHECK(pr.well_defined());
    CHECK(pr.kernel_group().invariant_factors() == std::vector<Integer>{0});
    CHECK(pr.image_order() == 3);

    // compose with zero map
    AbHom zero(z3, z3, mat({{0}}));
    CHECK(zero.is_zero());
    CHECK(zero.compose(pr.compose(AbHom(z, z, mat({{5}})))).is_zero());
}

TEST_CASE("solve and kernel_basis") {
    IntMatrix m = mat({{2, 4}, {6, 8}});
    auto x = solve(m, {Integer(2), Integer(6)});
    REQUIRE(x.has_value());
    CHECK(m.apply(*x) == std::vector<Integer>{2, 6});
    CHECK_FALSE(solve(m, {Integer(1), Integer(0)}).has_value());

    IntMatrix singular = mat({{1, 2, 3}, {2, 4, 6}});
    IntMatrix k = kernel_basis(singular);
    CHECK(k.cols() == 2);
    for (std::size_t j = 0; j < k.cols(); ++j) {
        auto img = singular.apply(k.column(j));
        for (const auto& v : img) CHECK(v == 0);
    }
}
