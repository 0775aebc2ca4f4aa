#include "polya/arith.hpp"
#include "polya/errors.hpp"

#include <boost/multiprecision/integer.hpp>

#include <algorithm>
#include <array>
#include <numeric>

namespace polya {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod64(u64 a, u64 b, u64 n) { return (u64)((u128)a * b % n); }

u64 powmod64(u64 a, u64 e, u64 n) {
    u64 r = 1;
    a %= n;
    while (e) {
        if (e & 1) r = mulmod64(r, a, n);
        a = mulmod64(a, a, n);
        e >>= 1;
    }
    return r;
}

bool miller_rabin64(u64 n, u64 a) {
    if (a % n == 0) return true;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    u64 x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod64(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

// Valid deterministically for all n < 2^64.
constexpr std::array<u64, 12> kWitnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    for (u64 a : kWitnesses)
        if (!miller_rabin64(n, a)) return false;
    return true;
}

u64 splitmix64(u64& state) {
    u64 z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

bool miller_rabin_big(const Int& n, const Int& a) {
    Int d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    Int x = boost::multiprecision::powm(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return true;
    }
    return false;
}

constexpr int kSmallSieveLimit = 1'000'000;

// Odd trial divisors via wheel over 2,3,5.
constexpr std::array<int, 8> kWheel = {4, 2, 4, 2, 4, 6, 2, 6};

u64 pollard_brent(u64 n, u64 c) {
    u64 x = 2, y = 2, d = 1;
    u64 q = 1;
    int m = 128;
    u64 ys = y;
    for (u64 r = 1; d == 1; r <<= 1) {
        x = y;
        for (u64 i = 0; i < r; ++i) y = (mulmod64(y, y, n) + c) % n;
        for (u64 k = 0; k < r && d == 1; k += m) {
            ys = y;
            u64 lim = std::min<u64>(m, r - k);
            for (u64 i = 0; i < lim; ++i) {
                y = (mulmod64(y, y, n) + c) % n;
                u64 diff = x > y ? x - y : y - x;
                q = mulmod64(q, diff == 0 ? 1 : diff, n);
            }
            d = std::gcd(q, n);
        }
    }
    if (d == n) {
        // backtrack
        do {
            ys = (mulmod64(ys, ys, n) + c) % n;
            u64 diff = x > ys ? x - ys : ys - x;
            d = std::gcd(diff == 0 ? n : diff, n);
        } while (d == 1);
    }
    return d;
}

Int pollard_brent_big(const Int& n, const Int& c) {
    Int x = 2, y = 2, d = 1, q = 1, ys = 2;
    int m = 64;
    for (Int r = 1; d == 1; r <<= 1) {
        x = y;
        for (Int i = 0; i < r; ++i) y = (y * y + c) % n;
        for (Int k = 0; k < r && d == 1; k += m) {
            ys = y;
            Int lim = std::min<Int>(Int(m), r - k);
            for (Int i = 0; i < lim; ++i) {
                y = (y * y + c) % n;
                Int diff = boost::multiprecision::abs(x - y);
                if (diff != 0) q = (q * diff) % n;
            }
            d = boost::multiprecision::gcd(q, n);
        }
    }
    if (d == n) {
        do {
            ys = (ys * ys + c) % n;
            Int diff = boost::multiprecision::abs(x - ys);
            d = boost::multiprecision::gcd(diff == 0 ? n : diff, n);
        } while (d == 1);
    }
    return d;
}

void factor_into(Int n, std::vector<Int>& out) {
    if (n == 1) return;
    if (classify_prime(n) != Primality::composite) {
        out.push_back(n);
        return;
    }
    if (fits_uint64(n)) {
        u64 v = to_uint64(n);
        for (u64 c = 1;; ++c) {
            u64 d = pollard_brent(v, c);
            if (d != v && d != 1) {
                factor_into(Int(d), out);
                factor_into(Int(v / d), out);
                return;
            }
        }
    }
    for (Int c = 1;; ++c) {
        Int d = pollard_brent_big(n, c);
        if (d != n && d != 1) {
            factor_into(d, out);
            factor_into(n / d, out);
            return;
        }
    }
}

} // namespace

int jacobi(Int a, Int n) {
    if (n <= 0 || (n & 1) == 0)
        throw invalid_input("jacobi: modulus must be odd and positive, got " + n.str());
    a = mod_floor(a, n);
    int t = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            Int r = n % 8;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, n);
        if ((a % 4) == 3 && (n % 4) == 3) t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

Primality classify_prime(const Int& n) {
    if (n < 2) return Primality::composite;
    if (fits_uint64(n))
        return is_prime_u64(to_uint64(n)) ? Primality::prime : Primality::composite;

    if ((n & 1) == 0) return Primality::composite;
    for (u64 p : kWitnesses)
        if (n % p == 0) return Primality::composite;

    // Fixed 40-round test; bases derived deterministically from n so that
    // reruns are byte-identical.
    u64 seed = to_uint64(n & Int(UINT64_MAX)) ^ 0x706f6c7961ull;
    for (int round = 0; round < 40; ++round) {
        Int a = 2 + mod_floor(Int(splitmix64(seed)), n - 3);
        if (!miller_rabin_big(n, a)) return Primality::composite;
    }
    return Primality::probable_prime;
}

bool is_prime(const Int& n) { return classify_prime(n) != Primality::composite; }

Int Factorization::value() const {
    Int v = unit_sign;
    for (const auto& [p, e] : prime_powers)
        v *= boost::multiprecision::pow(p, static_cast<unsigned>(e));
    return v;
}

bool Factorization::is_squarefree() const {
    return std::all_of(prime_powers.begin(), prime_powers.end(),
                       [](const auto& pe) { return pe.second == 1; });
}

std::vector<Int> Factorization::primes() const {
    std::vector<Int> ps;
    ps.reserve(prime_powers.size());
    for (const auto& [p, e] : prime_powers) ps.push_back(p);
    return ps;
}

Factorization factor(const Int& n) {
    if (n == 0) throw invalid_input("factor: n must be nonzero");
    Factorization f;
    f.unit_sign = n < 0 ? -1 : 1;
    Int m = boost::multiprecision::abs(n);

    std::vector<Int> primes;
    for (int p : {2, 3, 5})
        while (m % p == 0) { m /= p; primes.push_back(p); }
    Int d = 7;
    int wheel_pos = 0;
    while (d <= kSmallSieveLimit && d * d <= m) {
        while (m % d == 0) { m /= d; primes.push_back(d); }
        d += kWheel[wheel_pos];
        wheel_pos = (wheel_pos + 1) % 8;
    }
    if (m > 1) {
        if (d * d > m)
            primes.push_back(m);
        else
            factor_into(m, primes);
    }
    std::sort(primes.begin(), primes.end());

    for (const Int& p : primes) {
        if (!f.prime_powers.empty() && f.prime_powers.back().first == p)
            ++f.prime_powers.back().second;
        else
            f.prime_powers.emplace_back(p, 1);
    }
    return f;
}

SquareClass squarefree_part(const Int& n) {
    if (n == 0) throw invalid_input("squarefree_part: n must be nonzero");
    Factorization f = factor(n);
    std::vector<Int> odd_primes;
    for (const auto& [p, e] : f.prime_powers)
        if (e % 2 == 1) odd_primes.push_back(p);
    return SquareClass(f.unit_sign, std::move(odd_primes));
}

SquareClass squarefree_class_supported(const Int& n, std::span<const Int> support) {
    if (n == 0) throw invalid_input("squarefree_class_supported: n must be nonzero");
    int sign = n < 0 ? -1 : 1;
    Int m = boost::multiprecision::abs(n);
    std::vector<Int> odd;
    for (const Int& p : support) {
        int e = 0;
        while (m % p == 0) { m /= p; ++e; }
        if (e % 2 == 1) odd.push_back(p);
    }
    if (!is_perfect_square(m))
        throw internal_error("squarefree_class_supported: cofactor " + m.str() +
                             " is not a square; support incomplete");
    std::sort(odd.begin(), odd.end());
    return SquareClass(sign, std::move(odd));
}

CrtResult crt(const ResidueSystem& system) {
    if (system.pairs.empty()) throw invalid_input("crt: empty system");
    Int x = 0, m = 1;
    for (const auto& [r, mod] : system.pairs) {
        if (mod <= 0) throw invalid_input("crt: modulus must be positive");
        Int g, u, v;
        g = boost::multiprecision::gcd(m, mod);
        if (g != 1)
            throw invalid_input("crt: moduli not pairwise coprime (gcd " + g.str() + ")");
        // x' = x + m * t where t = (r - x) / m mod `mod`
        Int m_inv;
        {
            // extended gcd of m and mod
            Int a = m % mod, b = mod, x0 = 1, x1 = 0;
            Int aa = a;
            while (b != 0) {
                Int q = a / b;
                Int tmp = a - q * b; a = b; b = tmp;
                tmp = x0 - q * x1; x0 = x1; x1 = tmp;
            }
            (void)aa;
            m_inv = mod_floor(x0, mod);
        }
        Int t = mod_floor((mod_floor(r, mod) - x % mod) * m_inv, mod);
        x += m * t;
        m *= mod;
    }
    return {mod_floor(x, m), m};
}

ProgressionHit find_prime_in_progression(const Int& a, const Int& m, const Int& start,
                                         std::uint64_t limit) {
    if (m <= 0) throw invalid_input("find_prime_in_progression: modulus must be positive");
    Int g = boost::multiprecision::gcd(mod_floor(a, m), m);
    if (g != 1 && m != 1)
        throw invalid_input("find_prime_in_progression: gcd(a, m) = " + g.str() + " > 1");

    Int c = mod_floor(a, m);
    if (c < start) c += ((start - c + m - 1) / m) * m;
    for (std::uint64_t examined = 1; examined <= limit; ++examined, c += m) {
        Primality pr = classify_prime(c);
        if (pr != Primality::composite) return {c, examined, pr};
    }
    throw search_exhausted("find_prime_in_progression: no prime = " + a.str() + " (mod " +
                           m.str() + ") within " + std::to_string(limit) + " candidates");
}

} // namespace polya
