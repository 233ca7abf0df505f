#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "circpow/integers.hpp"
#include "circpow/ring.hpp"

namespace circpow {

/// One solution (k_1,...,k_m) of the system
///     k_1 + ... + k_m = p,    k_1 + 2 k_2 + ... + m k_m = q.
using CompositionTuple = std::vector<std::uint64_t>;

namespace detail {

// Fills positions i..m of `tuple` with every admissible suffix, given the
// count and weight still to be placed. Entries are chosen ascending at each
// position, so tuples come out in lexicographic order. A suffix over
// positions i..m with count c can carry weight between i*c and m*c; anything
// outside that window is pruned.
inline void delta_descend(std::uint64_t m, std::uint64_t i, std::int64_t count,
                          std::int64_t weight, CompositionTuple& tuple,
                          const std::function<void(const CompositionTuple&)>& sink) {
    if (count < 0 || weight < 0) return;
    if (i == m) {
        if (count * static_cast<std::int64_t>(m) == weight) {
            tuple[i - 1] = static_cast<std::uint64_t>(count);
            sink(tuple);
        }
        return;
    }
    const auto idx = static_cast<std::int64_t>(i);
    const std::int64_t max_k = std::min(count, weight / idx);
    for (std::int64_t k = 0; k <= max_k; ++k) {
        const std::int64_t rem_count = count - k;
        const std::int64_t rem_weight = weight - idx * k;
        if (rem_weight < (idx + 1) * rem_count) continue;
        if (rem_weight > static_cast<std::int64_t>(m) * rem_count) continue;
        tuple[i - 1] = static_cast<std::uint64_t>(k);
        delta_descend(m, i + 1, rem_count, rem_weight, tuple, sink);
    }
}

}  // namespace detail

/// Streams every m-tuple of nonnegative integers with entry sum p and
/// weighted sum q, each exactly once, in lexicographic order of
/// (k_1,...,k_m). Infeasible systems (including negative q or p) yield
/// nothing.
inline void for_each_delta(std::uint64_t m, std::int64_t q, std::int64_t p,
                           const std::function<void(const CompositionTuple&)>& sink) {
    if (m == 0) throw std::invalid_argument("for_each_delta: m must be >= 1");
    CompositionTuple tuple(m, 0);
    detail::delta_descend(m, 1, p, q, tuple, sink);
}

inline std::vector<CompositionTuple> enumerate_delta(std::uint64_t m, std::int64_t q,
                                                     std::int64_t p) {
    std::vector<CompositionTuple> out;
    for_each_delta(m, q, p, [&](const CompositionTuple& t) { out.push_back(t); });
    return out;
}

/// p! / (k_1! ... k_m!), exact. Requires sum(ks) == p.
inline Int multinomial(std::uint64_t p, std::span<const std::uint64_t> ks) {
    std::uint64_t total = 0;
    for (std::uint64_t k : ks) total += k;
    if (total != p)
        throw std::invalid_argument("multinomial: parts must sum to p");
    Int result = 1;
    std::uint64_t placed = 0;
    for (std::uint64_t k : ks) {
        placed += k;
        result *= binomial(placed, k);
    }
    return result;
}

/// Direct multinomial expansion of the coefficient sum
///     L(m,p) = sum over tuples of  C(p; k_1..k_m) * a_1^{k_1} ... a_m^{k_m}.
/// Deliberately brute force; this is the oracle the recursive engine is
/// checked against. Requires 1 <= p <= m and at least m leading values of a.
template <ring_descriptor R>
typename R::element l_direct(const R& ring, std::span<const typename R::element> a,
                             std::uint64_t m, std::uint64_t p) {
    if (p < 1 || p > m)
        throw std::invalid_argument("l_direct: requires 1 <= p <= m");
    if (a.size() < m)
        throw std::invalid_argument("l_direct: need at least m coefficients");
    typename R::element acc = ring.zero();
    for_each_delta(m, static_cast<std::int64_t>(m), static_cast<std::int64_t>(p),
                   [&](const CompositionTuple& ks) {
                       typename R::element term = ring.from_integer(multinomial(p, ks));
                       for (std::uint64_t i = 0; i < m; ++i) {
                           if (ks[i] == 0) continue;
                           term = ring.multiply(term, pow(ring, a[i], ks[i]));
                       }
                       acc = ring.add(acc, term);
                   });
    return acc;
}

}  // namespace circpow
