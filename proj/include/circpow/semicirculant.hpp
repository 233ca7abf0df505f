#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "circpow/execution.hpp"
#include "circpow/formal.hpp"
#include "circpow/matrix.hpp"
#include "circpow/ring.hpp"

namespace circpow {

/// Upper-triangular Toeplitz matrix determined by its first row: entry (i,j)
/// is row[j-i] for j >= i and zero below the diagonal.
template <ring_descriptor R>
struct SemicirculantSpec {
    R ring;
    std::vector<typename R::element> row;

    SemicirculantSpec(R r, std::vector<typename R::element> first_row)
        : ring(std::move(r)), row(std::move(first_row)) {
        if (row.empty())
            throw std::invalid_argument("SemicirculantSpec: order must be >= 1");
    }

    std::size_t order() const { return row.size(); }
};

/// First row of A^k; the power of a semicirculant matrix is semicirculant, so
/// the row determines the whole matrix.
template <ring_descriptor R>
struct PowerResult {
    std::vector<typename R::element> row;
    std::uint64_t k = 0;
};

template <ring_descriptor R>
SquareMatrix<R> to_dense(const SemicirculantSpec<R>& spec) {
    const std::size_t n = spec.order();
    SquareMatrix<R> m(spec.ring, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m.at(i, j) = spec.row[j - i];
    return m;
}

namespace detail {

template <ring_descriptor R>
std::vector<typename R::element> identity_row(const R& ring, std::size_t n) {
    std::vector<typename R::element> row(n, ring.zero());
    row[0] = ring.one();
    return row;
}

}  // namespace detail

/// A^k through the symbolic engine: build the entries once with k held
/// formal, then evaluate each position at the concrete exponent. The build is
/// inherently sequential; the evaluations are independent and form the
/// parallel kernel.
template <ring_descriptor R>
PowerResult<R> power(const SemicirculantSpec<R>& spec, std::uint64_t k,
                     Execution exec = Execution::parallel) {
    const std::size_t n = spec.order();
    if (k == 0) return {detail::identity_row(spec.ring, n), k};

    const std::span<const typename R::element> tail(spec.row.data() + 1, n - 1);
    const FormalSequence<R> seq = build_sequence(spec.ring, spec.row[0], tail, n - 1);

    std::vector<typename R::element> out(n, spec.ring.zero());
    const bool parallel = exec == Execution::parallel;
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::int64_t m = 0; m < static_cast<std::int64_t>(n); ++m)
        out[static_cast<std::size_t>(m)] =
            evaluate(spec.ring, seq.entries[static_cast<std::size_t>(m)], seq.a0, k);
    return {std::move(out), k};
}

/// A^k by dense repeated multiplication; the independent oracle the engine is
/// tested against.
template <ring_descriptor R>
PowerResult<R> naive_power(const SemicirculantSpec<R>& spec, std::uint64_t k) {
    SquareMatrix<R> dense = pow_repeated(spec.ring, to_dense(spec), k);
    std::vector<typename R::element> row;
    row.reserve(spec.order());
    for (std::size_t j = 0; j < spec.order(); ++j) row.push_back(dense.at(0, j));
    return {std::move(row), k};
}

/// Power of a row with p leading zeros: strip them, power the shifted matrix,
/// and put entry m of the result back at position m + k*p. A row that is zero
/// everywhere powers to zero (identity for k = 0).
template <ring_descriptor R>
PowerResult<R> shifted_power(const SemicirculantSpec<R>& spec, std::uint64_t k,
                             Execution exec = Execution::parallel) {
    const std::size_t n = spec.order();
    std::size_t shift = 0;
    while (shift < n && is_zero(spec.ring, spec.row[shift])) ++shift;

    if (k == 0) return {detail::identity_row(spec.ring, n), k};
    if (shift == n) return {std::vector<typename R::element>(n, spec.ring.zero()), k};

    std::vector<typename R::element> out(n, spec.ring.zero());
    // Positions k*shift and beyond may fall outside the finite order.
    if (shift != 0 && k > (n - 1) / shift) return {std::move(out), k};

    SemicirculantSpec<R> stripped(
        spec.ring,
        std::vector<typename R::element>(spec.row.begin() + static_cast<std::ptrdiff_t>(shift),
                                         spec.row.end()));
    PowerResult<R> inner = power(stripped, k, exec);
    const std::size_t offset = k * shift;
    for (std::size_t m = 0; m + offset < n && m < inner.row.size(); ++m)
        out[m + offset] = std::move(inner.row[m]);
    return {std::move(out), k};
}

/// The classical division-based recursion
///     a_m(k) = (1/(m*a0)) * sum_{i=1..m} (i*k - m + i) * a_i * a_{m-i}(k),
/// which needs a0 and every index 1..N-1 to be units. Returns nothing when
/// any required inverse is missing; when it applies it is a second,
/// independent route to the same row.
template <ring_descriptor R>
std::optional<PowerResult<R>> division_recursion_power(const SemicirculantSpec<R>& spec,
                                                       std::uint64_t k) {
    const R& ring = spec.ring;
    const std::size_t n = spec.order();

    const std::optional<typename R::element> a0_inv = ring.try_invert(spec.row[0]);
    if (!a0_inv) return std::nullopt;
    std::vector<typename R::element> index_inv;
    index_inv.reserve(n);
    for (std::size_t m = 1; m < n; ++m) {
        std::optional<typename R::element> inv = ring.try_invert(ring.from_integer(Int(m)));
        if (!inv) return std::nullopt;
        index_inv.push_back(std::move(*inv));
    }

    std::vector<typename R::element> out;
    out.reserve(n);
    out.push_back(pow(ring, spec.row[0], k));
    for (std::size_t m = 1; m < n; ++m) {
        typename R::element acc = ring.zero();
        for (std::size_t i = 1; i <= m; ++i) {
            const Int factor = Int(i) * Int(k) - Int(m) + Int(i);
            typename R::element term = ring.multiply(ring.from_integer(factor), spec.row[i]);
            term = ring.multiply(term, out[m - i]);
            acc = ring.add(acc, term);
        }
        acc = ring.multiply(acc, index_inv[m - 1]);
        acc = ring.multiply(acc, *a0_inv);
        out.push_back(std::move(acc));
    }
    return PowerResult<R>{std::move(out), k};
}

}  // namespace circpow
