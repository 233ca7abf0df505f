#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "circpow/ring.hpp"

namespace circpow::testsupport {

// Deterministic generators: every property test fixes its own seed, and no
// expected value is ever derived from the sampled data outside the test body.
inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Int random_int(std::mt19937_64& rng, int lo = -9, int hi = 9) {
    std::uniform_int_distribution<int> dist(lo, hi);
    return Int(dist(rng));
}

template <ring_descriptor R>
typename R::element random_element(const R& ring, std::mt19937_64& rng, int lo = -9,
                                   int hi = 9) {
    return ring.from_integer(random_int(rng, lo, hi));
}

template <ring_descriptor R>
std::vector<typename R::element> random_elements(const R& ring, std::mt19937_64& rng,
                                                 std::size_t n, int lo = -9, int hi = 9) {
    std::vector<typename R::element> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(random_element(ring, rng, lo, hi));
    return out;
}

}  // namespace circpow::testsupport
