#pragma once

#include <stdexcept>
#include <string>

namespace polya {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad arguments: non-squarefree d, even Jacobi modulus, gcd(a,m) > 1, ...
struct invalid_input : error {
    using error::error;
};

// A bounded search ran out of candidates (progression scans, tuple search).
struct search_exhausted : error {
    using error::error;
};

// A continued-fraction run exceeded its step budget before the period closed.
struct unit_out_of_reach : error {
    using error::error;
};

// An internal identity failed (e.g. exactness divisibility). Always a bug.
struct internal_error : error {
    using error::error;
};

} // namespace polya
