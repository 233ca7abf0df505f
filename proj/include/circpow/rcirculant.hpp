#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "circpow/execution.hpp"
#include "circpow/matrix.hpp"
#include "circpow/ring.hpp"
#include "circpow/semicirculant.hpp"

namespace circpow {

/// n x n matrix whose rows cycle right, with entries that wrap around scaled
/// by r: entry (i,j) is row[j-i] for j >= i and r*row[n+j-i] below the
/// diagonal. r = 1 gives the ordinary circulant.
template <ring_descriptor R>
struct RCirculant {
    R ring;
    std::uint64_t n = 0;
    typename R::element r;
    std::vector<typename R::element> row;

    RCirculant(R ring_, typename R::element r_, std::vector<typename R::element> row_)
        : ring(std::move(ring_)), n(row_.size()), r(std::move(r_)), row(std::move(row_)) {
        if (n == 0) throw std::invalid_argument("RCirculant: order must be >= 1");
    }
};

template <ring_descriptor R>
SquareMatrix<R> to_dense(const RCirculant<R>& c) {
    const std::size_t n = c.n;
    SquareMatrix<R> m(c.ring, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.at(i, j) = j >= i ? c.row[j - i] : c.ring.multiply(c.r, c.row[n + j - i]);
    return m;
}

/// k-th power of the basic permutation (the companion matrix of X^n - r,
/// which satisfies E^n = r*I): a single strip r^floor(k/n) at index k mod n.
template <ring_descriptor R>
RCirculant<R> basic_permutation_power(const R& ring, std::uint64_t n,
                                      const typename R::element& r, std::uint64_t k) {
    if (n == 0) throw std::invalid_argument("basic_permutation_power: order must be >= 1");
    std::vector<typename R::element> row(n, ring.zero());
    row[k % n] = pow(ring, r, k / n);
    return RCirculant<R>(ring, r, std::move(row));
}

/// Dense k-th power by repeated multiplication; the oracle for the fold.
template <ring_descriptor R>
SquareMatrix<R> naive_rc_power(const RCirculant<R>& c, std::uint64_t k) {
    return pow_repeated(c.ring, to_dense(c), k);
}

namespace detail {

inline std::uint64_t fold_support(std::uint64_t n, std::uint64_t k) {
    if (n <= 1 || k == 0) return 0;
    if (k > (std::numeric_limits<std::uint64_t>::max() - 1) / (n - 1))
        throw std::length_error("power_via_fold: k too large for the fold support");
    return (n - 1) * k;
}

}  // namespace detail

/// C^k via the associated semicirculant row [c_0..c_{n-1},0,0,...]: compute
/// its k-th-power entries c_m(k) for m up to (n-1)k (nothing survives past
/// that), then fold them back by congruence class, weighting index m by
/// r^floor(m/n). Strip p collects every m with m mod n = p. The n strip
/// accumulations are independent and run as the parallel kernel.
template <ring_descriptor R>
RCirculant<R> power_via_fold(const RCirculant<R>& c, std::uint64_t k,
                             Execution exec = Execution::parallel) {
    const R& ring = c.ring;
    const std::uint64_t n = c.n;
    const std::uint64_t support = detail::fold_support(n, k);

    // Associated semicirculant row, truncated or zero-padded to the support.
    std::vector<typename R::element> padded = c.row;
    padded.resize(support + 1, ring.zero());
    SemicirculantSpec<R> assoc(ring, std::move(padded));
    PowerResult<R> entries = power(assoc, k, exec);

    std::vector<typename R::element> strips(n, ring.zero());
    const bool parallel = exec == Execution::parallel;
#pragma omp parallel for schedule(static) if (parallel)
    for (std::int64_t p = 0; p < static_cast<std::int64_t>(n); ++p) {
        typename R::element acc = ring.zero();
        typename R::element weight = ring.one();  // r^floor(m/n), stepped per lap
        for (std::uint64_t m = static_cast<std::uint64_t>(p); m <= support; m += n) {
            acc = ring.add(acc, ring.multiply(entries.row[m], weight));
            weight = ring.multiply(weight, c.r);
        }
        strips[static_cast<std::size_t>(p)] = std::move(acc);
    }
    return RCirculant<R>(ring, c.r, std::move(strips));
}

/// Closed form for a matrix carrying only two strips, a at index p and b at
/// index q (0 <= p < q < n). Index m of the associated row powers to
/// a^(k-h) * b^h * C(k,h) with h = (m-kp)/(q-p) whenever h is a nonnegative
/// integer at most k, and to zero otherwise; the strips then fold exactly as
/// in power_via_fold.
template <ring_descriptor R>
RCirculant<R> two_strip_power(const R& ring, std::uint64_t n, const typename R::element& r,
                              std::uint64_t p, std::uint64_t q, const typename R::element& a,
                              const typename R::element& b, std::uint64_t k) {
    if (!(p < q && q < n))
        throw std::invalid_argument("two_strip_power: requires 0 <= p < q < n");
    if (k != 0 && q > std::numeric_limits<std::uint64_t>::max() / k)
        throw std::length_error("two_strip_power: k too large for the fold support");

    const std::uint64_t lo = k * p;
    const std::uint64_t hi = k * q;
    const std::uint64_t step = q - p;

    std::vector<typename R::element> strips(n, ring.zero());
    for (std::uint64_t m = lo; m <= hi; m += step) {
        const std::uint64_t h = (m - lo) / step;
        typename R::element term = ring.multiply(pow(ring, a, k - h), pow(ring, b, h));
        term = ring.multiply(term, ring.from_integer(binomial(k, h)));
        term = ring.multiply(term, pow(ring, r, m / n));
        const std::size_t strip = static_cast<std::size_t>(m % n);
        strips[strip] = ring.add(strips[strip], term);
    }
    return RCirculant<R>(ring, r, std::move(strips));
}

}  // namespace circpow
