#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gf.hpp"
#include "witt.hpp"
#include "zq.hpp"

using namespace lcft;

namespace {

// ---- independent ghost-component oracle over integer lifts (prime fields) ----

Integer teich_lift(long a, long p, long n) {
    // Teichmuller representative of a mod p^n: a^(p^(n-1))
    Integer pn = pow_int(p, n);
    Integer acc = 1, base = mod_floor(Integer(a), pn);
    Integer e = pow_int(p, n - 1);
    while (e > 0) {
        if ((e & 1) != 0) acc = acc * base % pn;
        base = base * base % pn;
        e >>= 1;
    }
    return acc;
}

Integer powmod(Integer b, Integer e, const Integer& m) {
    Integer acc = 1;
    b = mod_floor(b, m);
    while (e > 0) {
        if ((e & 1) != 0) acc = acc * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return acc;
}

// ghost_i of Teichmuller-lifted digits, mod p^(i+1)
Integer ghost_i(const std::vector<long>& digits, long p, long i) {
    Integer mod = pow_int(p, i + 1);
    Integer acc = 0;
    for (long j = 0; j <= i; ++j) {
        Integer lift = teich_lift(digits[j], p, i + 1);
        acc = (acc + pow_int(p, j) * powmod(lift, pow_int(p, i - j), mod)) % mod;
    }
    return acc;
}

// reconstruct digit sequence from a ghost vector g_i given mod p^(i+1)
std::vector<long> digits_from_ghost(const std::vector<Integer>& g, long p) {
    long n = static_cast<long>(g.size());
    std::vector<long> d(n);
    for (long i = 0; i < n; ++i) {
        Integer mod = pow_int(p, i + 1);
        Integer partial = 0;
        for (long j = 0; j < i; ++j) {
            Integer lift = teich_lift(d[j], p, i + 1);
            partial = (partial + pow_int(p, j) * powmod(lift, pow_int(p, i - j), mod)) % mod;
        }
        Integer r = mod_floor(g[i] - partial, mod);
        Integer pi = pow_int(p, i);
        REQUIRE(r % pi == 0);
        d[i] = to_long((r / pi) % p);
    }
    return d;
}

std::vector<long> oracle_sum(const std::vector<long>& a, const std::vector<long>& b, long p) {
    long n = static_cast<long>(a.size());
    std::vector<Integer> g(n);
    for (long i = 0; i < n; ++i)
        g[i] = mod_floor(ghost_i(a, p, i) + ghost_i(b, p, i), pow_int(p, i + 1));
    return digits_from_ghost(g, p);
}

std::vector<long> oracle_prod(const std::vector<long>& a, const std::vector<long>& b, long p) {
    long n = static_cast<long>(a.size());
    std::vector<Integer> g(n);
    for (long i = 0; i < n; ++i)
        g[i] = mod_floor(ghost_i(a, p, i) * ghost_i(b, p, i), pow_int(p, i + 1));
    return digits_from_ghost(g, p);
}

std::shared_ptr<const gf::PerfRing> prime_ring(long p) {
    return std::make_shared<gf::PerfRing>(std::vector<gf::FieldPtr>{gf::make_field(p, 1)});
}

witt::WittVector wv(std::shared_ptr<const gf::PerfRing> ring, const std::vector<long>& d) {
    witt::WittVector w(ring, static_cast<long>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i)
        w.set_digit(0, static_cast<long>(i), ring->components[0]->from_int(d[i]));
    return w;
}

std::vector<long> digits_of(const witt::WittVector& w) {
    std::vector<long> d(w.length());
    for (long i = 0; i < w.length(); ++i) d[i] = static_cast<long>(w.digit(0, i));
    return d;
}

}  // namespace

TEST_CASE("finite field basics and canonical choices") {
    auto f4 = gf::make_field(2, 2);
    CHECK(f4->size() == 4);
    CHECK(f4->modulus_tail() == std::vector<long>{1, 1});  // x^2 + x + 1
    // multiplicative structure
    gf::Elem g = f4->generator();
    CHECK(f4->mul(g, f4->mul(g, g)) == f4->one());  // g^3 = 1
    CHECK(f4->add(g, f4->mul(g, g)) == f4->one());  // g + g^2 = 1 in F_4

    auto f9 = gf::make_field(3, 2);
    for (gf::Elem a = 1; a < f9->size(); ++a) {
        CHECK(f9->mul(a, f9->inv(a)) == f9->one());
        CHECK(f9->pow(a, Integer(8)) == f9->one());
    }
    CHECK_THROWS_AS(gf::make_field(2, std::vector<long>{1, 0}), structure_error);  // x^2+1 reducible
}

TEST_CASE("embedding F_4 into F_16 is a ring map") {
    auto f4 = gf::make_field(2, 2);
    auto f16 = gf::make_field(2, 4);
    gf::Embedding e(f4, f16);
    for (gf::Elem a = 0; a < 4; ++a)
        for (gf::Elem b = 0; b < 4; ++b) {
            CHECK(e.map(f4->add(a, b)) == f16->add(e.map(a), e.map(b)));
            CHECK(e.map(f4->mul(a, b)) == f16->mul(e.map(a), e.map(b)));
        }
    CHECK(e.map(f4->one()) == f16->one());
}

TEST_CASE("witt worked examples") {
    auto r2 = prime_ring(2);
    // (1,0) + (1,0) = (0,1) in W_2(F_2)
    CHECK(digits_of(witt::witt_add(wv(r2, {1, 0}), wv(r2, {1, 0}))) == std::vector<long>{0, 1});
    // (0,1) * (0,1) = (0,0)
    CHECK(digits_of(witt::witt_mul(wv(r2, {0, 1}), wv(r2, {0, 1}))) == std::vector<long>{0, 0});
    // a + 0 = a ; a * 1 = a ; a * 0 = 0
    auto a = wv(r2, {1, 1, 0, 1});
    CHECK(witt::witt_add(a, witt::witt_zero(r2, 4)) == a);
    CHECK(witt::witt_mul(a, witt::witt_one(r2, 4)) == a);
    CHECK(witt::witt_mul(a, witt::witt_zero(r2, 4)) == witt::witt_zero(r2, 4));
    // V(1,0,0) = (0,1,0) in W_3(F_2), and F(V(a)) = a + a at length 2
    auto v = witt::verschiebung(wv(r2, {1, 0, 0}));
    CHECK(digits_of(v) == std::vector<long>{0, 1, 0});
    auto b = wv(r2, {1, 1});
    CHECK(witt::frobenius(witt::verschiebung(b)) == witt::witt_add(b, b));
}

TEST_CASE("witt arithmetic agrees with ghost oracle") {
    Rng rng(2024);
    for (long p : {2L, 3L, 5L}) {
        auto ring = prime_ring(p);
        for (long n = 1; n <= 4; ++n) {
            for (int iter = 0; iter < 40; ++iter) {
                std::vector<long> da(n), db(n);
                for (long i = 0; i < n; ++i) {
                    da[i] = static_cast<long>(rng.below(p));
                    db[i] = static_cast<long>(rng.below(p));
                }
                auto a = wv(ring, da), b = wv(ring, db);
                CHECK(digits_of(witt::witt_add(a, b)) == oracle_sum(da, db, p));
                CHECK(digits_of(witt::witt_mul(a, b)) == oracle_prod(da, db, p));
            }
        }
    }
}

TEST_CASE("ring axioms on random samples") {
    Rng rng(5);
    for (long p : {2L, 3L}) {
        auto ring = prime_ring(p);
        long n = 3;
        for (int iter = 0; iter < 30; ++iter) {
            std::vector<long> da(n), db(n), dc(n);
            for (long i = 0; i < n; ++i) {
                da[i] = static_cast<long>(rng.below(p));
                db[i] = static_cast<long>(rng.below(p));
                dc[i] = static_cast<long>(rng.below(p));
            }
            auto a = wv(ring, da), b = wv(ring, db), c = wv(ring, dc);
            CHECK(witt::witt_add(a, b) == witt::witt_add(b, a));
            CHECK(witt::witt_mul(a, b) == witt::witt_mul(b, a));
            CHECK(witt::witt_add(witt::witt_add(a, b), c) == witt::witt_add(a, witt::witt_add(b, c)));
            CHECK(witt::witt_mul(witt::witt_mul(a, b), c) == witt::witt_mul(a, witt::witt_mul(b, c)));
            CHECK(witt::witt_mul(a, witt::witt_add(b, c)) ==
                  witt::witt_add(witt::witt_mul(a, b), witt::witt_mul(a, c)));
            CHECK(witt::witt_add(a, witt::witt_neg(a)) == witt::witt_zero(ring, n));
        }
    }
}

TEST_CASE("W_n(F_p) isomorphic to Z/p^n, exhaustively for p^n <= 125") {
    for (long p : {2L, 3L, 5L, 7L, 11L}) {
        auto ring = prime_ring(p);
        for (long n = 1; pow_int(p, n) <= 125; ++n) {
            long pn = to_long(pow_int(p, n));
            zq::ZqRing zr(ring->components[0], n);
            // build the bijection via the digit expansion and test both operations
            std::vector<witt::WittVector> table;
            for (long v = 0; v < pn; ++v)
                table.push_back(
                    witt::from_coefficient_ring(ring, 0, zr, zr.from_int(Integer(v))));
            for (long x = 0; x < pn; ++x)
                for (long y = 0; y < pn; ++y) {
                    CHECK(witt::witt_add(table[x], table[y]) == table[(x + y) % pn]);
                    CHECK(witt::witt_mul(table[x], table[y]) == table[(x * y) % pn]);
                }
        }
    }
}

TEST_CASE("coefficient-ring conversion round trips over F_4") {
    auto f4 = gf::make_field(2, 2);
    auto ring = std::make_shared<gf::PerfRing>(std::vector<gf::FieldPtr>{f4});
    zq::ZqRing zr(f4, 3);
    Rng rng(9);
    for (int iter = 0; iter < 50; ++iter) {
        witt::WittVector w(ring, 3);
        for (long i = 0; i < 3; ++i) w.set_digit(0, i, rng.below(4));
        auto z = witt::to_coefficient_ring(w, 0, zr);
        CHECK(witt::from_coefficient_ring(ring, 0, zr, z) == w);
    }
    // and the conversion is a ring map (so witt ops match zq ops)
    for (int iter = 0; iter < 50; ++iter) {
        witt::WittVector a(ring, 3), b(ring, 3);
        for (long i = 0; i < 3; ++i) {
            a.set_digit(0, i, rng.below(4));
            b.set_digit(0, i, rng.below(4));
        }
        auto za = witt::to_coefficient_ring(a, 0, zr);
        auto zb = witt::to_coefficient_ring(b, 0, zr);
        CHECK(zr.equal(witt::to_coefficient_ring(witt::witt_add(a, b), 0, zr), zr.add(za, zb)));
        CHECK(zr.equal(witt::to_coefficient_ring(witt::witt_mul(a, b), 0, zr), zr.mul(za, zb)));
    }
}

TEST_CASE("teichmuller lift is multiplicative in W_2(F_4)") {
    auto f4 = gf::make_field(2, 2);
    auto ring = std::make_shared<gf::PerfRing>(std::vector<gf::FieldPtr>{f4});
    gf::Elem g = f4->generator();
    for (gf::Elem x = 0; x < 4; ++x)
        for (gf::Elem y = 0; y < 4; ++y) {
            auto tx = witt::teichmuller(ring, {x}, 2);
            auto ty = witt::teichmuller(ring, {y}, 2);
            auto txy = witt::teichmuller(ring, {f4->mul(x, y)}, 2);
            CHECK(witt::witt_mul(tx, ty) == txy);
        }
    // omega(g) * omega(g^2) = omega(g^3) = omega(1)
    auto lhs = witt::witt_mul(witt::teichmuller(ring, {g}, 2),
                              witt::teichmuller(ring, {f4->mul(g, g)}, 2));
    CHECK(lhs == witt::witt_one(ring, 2));
}

TEST_CASE("frobenius and verschiebung structure") {
    auto f4 = gf::make_field(2, 2);
    auto ring = std::make_shared<gf::PerfRing>(std::vector<gf::FieldPtr>{f4});
    Rng rng(13);
    for (int iter = 0; iter < 30; ++iter) {
        witt::WittVector a(ring, 3);
        for (long i = 0; i < 3; ++i) a.set_digit(0, i, rng.below(4));
        // F acts digitwise by p-th power
        auto fa = witt::frobenius(a);
        for (long i = 0; i < 3; ++i) CHECK(fa.digit(0, i) == f4->pow(a.digit(0, i), 2));
        // F(V(a)) = p * a
        auto fva = witt::frobenius(witt::verschiebung(a));
        auto pa = witt::witt_add(a, a);
        CHECK(fva == pa);
    }
}

TEST_CASE("greenberg points worked examples") {
    auto f2 = gf::make_field(2, 1);
    auto r_f2 = std::make_shared<gf::PerfRing>(std::vector<gf::FieldPtr>{f2});
    auto r_f2xf2 = std::make_shared<gf::PerfRing>(std::vector<gf::FieldPtr>{f2, f2});

    witt::ProfiniteModule z4{f2, {2}};  // W_2(F_2) = Z/4
    auto g1 = witt::greenberg_points(z4, r_f2);
    CHECK(g1.group.invariant_factors() == std::vector<Integer>{4});

    auto g2 = witt::greenberg_points(z4, r_f2xf2);
    CHECK(g2.group.invariant_factors() == std::vector<Integer>{4, 4});

    witt::ProfiniteModule k{f2, {1}};  // the field itself, length 1
    auto f8 = gf::make_field(2, 3);
    auto r_f8 = std::make_shared<gf::PerfRing>(std::vector<gf::FieldPtr>{f8});
    auto g3 = witt::greenberg_points(k, r_f8);
    CHECK(g3.group.invariant_factors() == std::vector<Integer>{2, 2, 2});  // (F_8, +)
}

TEST_CASE("greenberg points classification is additive and product-compatible") {
    auto f2 = gf::make_field(2, 1);
    auto f4 = gf::make_field(2, 2);
    auto r = std::make_shared<gf::PerfRing>(std::vector<gf::FieldPtr>{f2, f4});
    witt::ProfiniteModule m{f2, {2, 1}};
    auto gp = witt::greenberg_points(m, r);
    // |W_2(F_2) + W_2(F_4)| * |W_1(F_2) + W_1(F_4)| = 4*16 * 2*4
    CHECK(gp.group.order() == Integer(4) * 16 * 2 * 4);

    Rng rng(3);
    auto random_elem = [&]() {
        std::vector<witt::WittVector> e;
        for (long l : m.cyclic_lengths) {
            witt::WittVector w(r, l);
            for (std::size_t c = 0; c < r->count(); ++c)
                for (long i = 0; i < l; ++i)
                    w.set_digit(c, i, rng.below(r->components[c]->size()));
            e.push_back(w);
        }
        return e;
    };
    for (int iter = 0; iter < 25; ++iter) {
        auto a = random_elem(), b = random_elem();
        std::vector<witt::WittVector> sum;
        for (std::size_t i = 0; i < a.size(); ++i) sum.push_back(witt::witt_add(a[i], b[i]));
        auto ca = gp.classify(a), cb = gp.classify(b);
        CHECK(gp.classify(sum) == gp.group.add(ca, cb));
    }

    // product ring decomposes as a direct sum
    auto r1 = std::make_shared<gf::PerfRing>(std::vector<gf::FieldPtr>{f2});
    auto r2 = std::make_shared<gf::PerfRing>(std::vector<gf::FieldPtr>{f4});
    auto gp1 = witt::greenberg_points(m, r1);
    auto gp2 = witt::greenberg_points(m, r2);
    std::vector<Integer> combined = gp1.group.invariant_factors();
    for (const auto& x : gp2.group.invariant_factors()) combined.push_back(x);
    CHECK(abgroup::iso_check(gp.group, abgroup::FinAbGroup::from_invariant_factors(combined)));
}
