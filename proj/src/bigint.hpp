#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lcft {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Base class for all errors raised by the library.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Structural misuse: mismatched rings, non-Galois input where Galois is required, ...
struct structure_error : error {
    explicit structure_error(const std::string& what) : error(what) {}
};

// An operation ran out of significant digits. `required` names the absolute
// precision that would have sufficed, when known (0 otherwise).
struct precision_error : error {
    long required;
    explicit precision_error(const std::string& what, long required_ = 0)
        : error(what), required(required_) {}
};

// A truncation/enlargement bound was exhausted without a certificate either way.
struct inconclusive_error : error {
    explicit inconclusive_error(const std::string& what) : error(what) {}
};

inline Integer pow_int(const Integer& base, unsigned long e) {
    Integer r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// Least non-negative residue.
inline Integer mod_floor(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += m;
    return r;
}

inline Integer divexact(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if (q * b != a) throw error("divexact: inexact division");
    return q;
}

inline long to_long(const Integer& a) {
    return static_cast<long>(a);
}

// Deterministic xorshift-based PRNG; identical streams on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed = 0) : state_(seed + 0x9e3779b97f4a7c15ULL) {
        next();
        next();
    }
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
    long range(long lo, long hi) {  // inclusive ends
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

  private:
    std::uint64_t state_;
};

}  // namespace lcft
