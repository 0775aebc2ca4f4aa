#pragma once

#include "polya/integer.hpp"
#include "polya/square_class.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace polya {

/// Jacobi symbol (a/n) for odd n >= 1. Equals the Legendre symbol when n is
/// prime. Throws invalid_input for even or non-positive n.
int jacobi(Int a, Int n);

enum class Primality { composite, prime, probable_prime };

/// Deterministic for n < 2^64 (fixed Miller-Rabin witness set); larger inputs
/// get a fixed 40-round test and come back as probable_prime, never prime.
Primality classify_prime(const Int& n);

/// True for prime and probable_prime. Callers that must distinguish a proven
/// prime use classify_prime.
bool is_prime(const Int& n);

struct Factorization {
    int unit_sign = 1;                          // +1 or -1
    std::vector<std::pair<Int, int>> prime_powers; // primes strictly increasing

    Int value() const;
    bool is_squarefree() const;
    std::vector<Int> primes() const;
};

/// Trial division to 10^6 followed by Brent-Pollard rho with a deterministic
/// parameter schedule. Rejects n = 0.
Factorization factor(const Int& n);

/// Class of n in Q*/(Q*)^2, i.e. its squarefree part. Rejects n = 0.
SquareClass squarefree_part(const Int& n);

/// Square class of n when its squarefree part is known to be supported on
/// `support` (e.g. unit-derived values over the ramified primes). Extracts
/// multiplicity parities over the support and requires the cofactor to be a
/// perfect square; no general factoring of n.
SquareClass squarefree_class_supported(const Int& n, std::span<const Int> support);

struct ResidueSystem {
    std::vector<std::pair<Int, Int>> pairs; // (residue, modulus)
};

struct CrtResult {
    Int remainder; // 0 <= remainder < modulus
    Int modulus;   // product of the input moduli
};

/// Simultaneous congruences with pairwise coprime moduli; non-coprime moduli
/// are rejected with invalid_input.
CrtResult crt(const ResidueSystem& system);

struct ProgressionHit {
    Int prime;
    std::uint64_t candidates_examined = 0;
    Primality primality = Primality::prime;
};

inline constexpr std::uint64_t kDefaultProgressionLimit = 1'000'000;

/// Smallest prime p >= start with p = a (mod m). Scans candidates stepping by
/// m; `limit` counts candidates, not primes. gcd(a, m) > 1 -> invalid_input;
/// running out of candidates -> search_exhausted.
ProgressionHit find_prime_in_progression(const Int& a, const Int& m, const Int& start,
                                         std::uint64_t limit = kDefaultProgressionLimit);

} // namespace polya
