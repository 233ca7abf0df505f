#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>

namespace circpow {

// Exact signed integers of arbitrary size. Combinatorial quantities are
// computed here first and only then mapped into a ring; dividing inside a
// residue ring would not be well defined.
using Int = boost::multiprecision::cpp_int;

// C(k, p), exact. Zero for p > k.
inline Int binomial(std::uint64_t k, std::uint64_t p) {
    if (p > k) return 0;
    if (p > k - p) p = k - p;
    Int result = 1;
    for (std::uint64_t i = 1; i <= p; ++i) {
        result *= Int(k - p + i);
        result /= Int(i);  // exact: result holds C(k-p+i, i) at this point
    }
    return result;
}

}  // namespace circpow
