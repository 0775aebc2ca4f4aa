#pragma once

#include "polya/integer.hpp"

#include <span>
#include <vector>

namespace polya {

/// An element of Q*/(Q*)^2: a sign together with a strictly increasing set of
/// distinct primes. The represented value is sign * (product of primes), which
/// is squarefree; (+1, {}) is the identity.
class SquareClass {
public:
    SquareClass() : sign_(1) {}
    SquareClass(int sign, std::vector<Int> primes);

    static SquareClass identity() { return SquareClass(); }

    int sign() const { return sign_; }
    const std::vector<Int>& primes() const { return primes_; }
    bool is_identity() const { return sign_ == 1 && primes_.empty(); }

    Int value() const;

    friend bool operator==(const SquareClass& a, const SquareClass& b) = default;
    // Lexicographic on (sign, primes); used only for canonical ordering.
    bool operator<(const SquareClass& other) const;

private:
    int sign_;
    std::vector<Int> primes_; // strictly increasing
};

/// Group law: product of signs, symmetric difference of prime supports.
SquareClass sq_mul(const SquareClass& a, const SquareClass& b);

/// A subgroup of Q*/(Q*)^2 as an F2 span. The basis is kept in reduced
/// echelon form over the coordinates {-1} followed by the primes that occur
/// in the generators, in increasing order.
class SquareClassSubgroup {
public:
    const std::vector<SquareClass>& basis() const { return basis_; }
    int rank() const { return static_cast<int>(basis_.size()); }
    Int order() const;

    bool contains(const SquareClass& c) const;

    friend SquareClassSubgroup subgroup_generated(std::span<const SquareClass> gens);

private:
    std::vector<SquareClass> basis_;
};

SquareClassSubgroup subgroup_generated(std::span<const SquareClass> gens);
SquareClassSubgroup subgroup_generated(std::initializer_list<SquareClass> gens);

} // namespace polya
