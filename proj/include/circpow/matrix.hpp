#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "circpow/execution.hpp"
#include "circpow/ring.hpp"

namespace circpow {

/// Dense square matrix over a ring, row major. Backs the brute-force power
/// oracles and the dense-squaring side of the benchmark.
template <ring_descriptor R>
class SquareMatrix {
public:
    SquareMatrix(const R& ring, std::size_t n)
        : n_(n), data_(n * n, ring.zero()) {
        if (n == 0) throw std::invalid_argument("SquareMatrix: order must be >= 1");
    }

    static SquareMatrix identity(const R& ring, std::size_t n) {
        SquareMatrix m(ring, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = ring.one();
        return m;
    }

    std::size_t order() const { return n_; }

    typename R::element& at(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const typename R::element& at(std::size_t i, std::size_t j) const {
        return data_[i * n_ + j];
    }

private:
    std::size_t n_;
    std::vector<typename R::element> data_;
};

/// C = A * B. The parallel path splits the output rows across threads; each
/// row's inner sums stay in one thread and in a fixed order, so both paths
/// produce identical entries.
template <ring_descriptor R>
SquareMatrix<R> multiply(const R& ring, const SquareMatrix<R>& a, const SquareMatrix<R>& b,
                         Execution exec = Execution::serial) {
    if (a.order() != b.order())
        throw std::invalid_argument("multiply: dimension mismatch");
    const std::size_t n = a.order();
    SquareMatrix<R> c(ring, n);
    const bool parallel = exec == Execution::parallel;
#pragma omp parallel for schedule(static) if (parallel)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            typename R::element acc = ring.zero();
            for (std::size_t l = 0; l < n; ++l)
                acc = ring.add(acc, ring.multiply(a.at(static_cast<std::size_t>(i), l),
                                                  b.at(l, j)));
            c.at(static_cast<std::size_t>(i), j) = std::move(acc);
        }
    }
    return c;
}

template <ring_descriptor R>
bool matrices_equal(const R& ring, const SquareMatrix<R>& a, const SquareMatrix<R>& b) {
    if (a.order() != b.order()) return false;
    for (std::size_t i = 0; i < a.order(); ++i)
        for (std::size_t j = 0; j < a.order(); ++j)
            if (!ring.equals(a.at(i, j), b.at(i, j))) return false;
    return true;
}

/// A^k by k-1 plain multiplications. The deliberately simple reference.
template <ring_descriptor R>
SquareMatrix<R> pow_repeated(const R& ring, const SquareMatrix<R>& a, std::uint64_t k) {
    SquareMatrix<R> acc = SquareMatrix<R>::identity(ring, a.order());
    for (std::uint64_t i = 0; i < k; ++i) acc = multiply(ring, acc, a);
    return acc;
}

/// A^k by square-and-multiply; the dense competitor in the benchmark.
template <ring_descriptor R>
SquareMatrix<R> pow_squaring(const R& ring, SquareMatrix<R> a, std::uint64_t k,
                             Execution exec = Execution::serial) {
    SquareMatrix<R> acc = SquareMatrix<R>::identity(ring, a.order());
    while (k != 0) {
        if (k & 1) acc = multiply(ring, acc, a, exec);
        k >>= 1;
        if (k != 0) a = multiply(ring, a, a, exec);
    }
    return acc;
}

}  // namespace circpow
