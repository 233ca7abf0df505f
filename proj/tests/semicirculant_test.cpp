#include "doctest.h"

#include <cstdint>
#include <vector>

#include "circpow/semicirculant.hpp"
#include "test_support.hpp"

using namespace circpow;
using testsupport::make_rng;
using testsupport::random_elements;

namespace {

template <ring_descriptor R>
SemicirculantSpec<R> spec_of(const R& ring, std::vector<int> row) {
    std::vector<typename R::element> mapped;
    mapped.reserve(row.size());
    for (int v : row) mapped.push_back(ring.from_integer(Int(v)));
    return SemicirculantSpec<R>(ring, std::move(mapped));
}

template <ring_descriptor R>
void check_rows_equal(const R& ring, const std::vector<typename R::element>& a,
                      const std::vector<typename R::element>& b) {
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(ring.equals(a[i], b[i]));
}

}  // namespace

TEST_CASE("power: identity, first power, and the worked 13-entry cube") {
    IntegerRing z;
    const auto spec = spec_of(z, {5, 4, 3, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0});

    const auto p0 = power(spec, 0);
    CHECK(p0.row[0] == 1);
    for (std::size_t m = 1; m < spec.order(); ++m) CHECK(p0.row[m] == 0);

    check_rows_equal(z, power(spec, 1).row, spec.row);

    const std::vector<Int> cube{125, 300, 465, 574, 594, 504, 369,
                                234, 126, 56,  21,  6,   1,   0, 0};
    check_rows_equal(z, power(spec, 3).row, cube);
}

TEST_CASE("naive_power basics") {
    IntegerRing z;
    CHECK(naive_power(spec_of(z, {3}), 5).row[0] == 243);

    // The shift matrix squared shifts twice.
    const auto j = spec_of(z, {0, 1, 0, 0});
    const std::vector<Int> expected{0, 0, 1, 0};
    check_rows_equal(z, naive_power(j, 2).row, expected);

    const auto spec = spec_of(z, {5, 4, 3, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0});
    check_rows_equal(z, naive_power(spec, 3).row, power(spec, 3).row);
}

TEST_CASE("power equals naive_power on random rows") {
    const auto check_ring = [](const auto& ring, std::uint64_t seed) {
        auto rng = make_rng(seed);
        for (int trial = 0; trial < 12; ++trial) {
            const std::size_t n = 1 + trial % 7;
            SemicirculantSpec spec(ring, random_elements(ring, rng, n));
            for (std::uint64_t k = 0; k <= 8; ++k)
                check_rows_equal(ring, power(spec, k).row, naive_power(spec, k).row);
        }
    };
    check_ring(IntegerRing{}, 401);
    check_ring(ModularRing{Int(2)}, 402);
    check_ring(ModularRing{Int(6)}, 403);
    check_ring(ModularRing{Int(8)}, 404);
    check_ring(ModularRing{Int(12)}, 405);
    check_ring(ModularRing{Int(101)}, 406);
}

TEST_CASE("dense powers stay upper-triangular Toeplitz") {
    // The first row really does determine the whole power.
    const auto check_ring = [](const auto& ring, std::uint64_t seed) {
        auto rng = make_rng(seed);
        for (int trial = 0; trial < 6; ++trial) {
            const std::size_t n = 2 + trial % 5;
            SemicirculantSpec spec(ring, random_elements(ring, rng, n));
            for (std::uint64_t k = 0; k <= 5; ++k) {
                const auto dense = pow_repeated(ring, to_dense(spec), k);
                for (std::size_t i = 0; i < n; ++i) {
                    for (std::size_t j = 0; j < n; ++j) {
                        if (j < i)
                            CHECK(is_zero(ring, dense.at(i, j)));
                        else
                            CHECK(ring.equals(dense.at(i, j), dense.at(0, j - i)));
                    }
                }
            }
        }
    };
    check_ring(IntegerRing{}, 451);
    check_ring(ModularRing{Int(12)}, 452);
}

TEST_CASE("serial and parallel evaluation agree") {
    ModularRing m12{Int(12)};
    auto rng = make_rng(411);
    for (int trial = 0; trial < 6; ++trial) {
        SemicirculantSpec spec(m12, random_elements(m12, rng, 7));
        for (std::uint64_t k = 0; k <= 6; ++k)
            check_rows_equal(m12, power(spec, k, Execution::parallel).row,
                             power(spec, k, Execution::serial).row);
    }
}

TEST_CASE("powers compose: A^(k1+k2) = A^k1 * A^k2") {
    const auto check_ring = [](const auto& ring, std::uint64_t seed) {
        auto rng = make_rng(seed);
        for (int trial = 0; trial < 8; ++trial) {
            const std::size_t n = 1 + trial % 6;
            SemicirculantSpec spec(ring, random_elements(ring, rng, n));
            for (std::uint64_t k1 = 0; k1 <= 4; ++k1) {
                for (std::uint64_t k2 = 0; k2 <= 4; ++k2) {
                    SemicirculantSpec left(ring, power(spec, k1).row);
                    SemicirculantSpec right(ring, power(spec, k2).row);
                    const auto product =
                        multiply(ring, to_dense(left), to_dense(right));
                    std::vector<typename std::remove_cvref_t<decltype(ring)>::element> row;
                    for (std::size_t j = 0; j < n; ++j) row.push_back(product.at(0, j));
                    check_rows_equal(ring, power(spec, k1 + k2).row, row);
                }
            }
        }
    };
    check_ring(IntegerRing{}, 421);
    check_ring(ModularRing{Int(8)}, 422);
}

TEST_CASE("shifted_power places the stripped power at offset k*p") {
    ModularRing m8{Int(8)};
    const auto b = spec_of(m8, {0, 2, 1, 1, 0});
    const auto shifted = shifted_power(b, 2);
    CHECK(shifted.row[4] == 5);
    check_rows_equal(m8, shifted.row, naive_power(b, 2).row);
    check_rows_equal(m8, shifted.row, power(b, 2).row);

    IntegerRing z;
    check_rows_equal(z, shifted_power(spec_of(z, {0, 1}), 1).row,
                     std::vector<Int>{0, 1});

    // (3 J^2)^2 = 9 J^4.
    const auto scaled_shift = spec_of(z, {0, 0, 3, 0, 0});
    const std::vector<Int> expected{0, 0, 0, 0, 9};
    check_rows_equal(z, shifted_power(scaled_shift, 2).row, expected);

    // Entirely zero row: identity at k = 0, zero otherwise.
    const auto zero = spec_of(z, {0, 0, 0});
    check_rows_equal(z, shifted_power(zero, 0).row, std::vector<Int>{1, 0, 0});
    check_rows_equal(z, shifted_power(zero, 4).row, std::vector<Int>{0, 0, 0});

    // Shift pushed past the order: everything falls off.
    check_rows_equal(z, shifted_power(spec_of(z, {0, 0, 5}), 2).row,
                     std::vector<Int>{0, 0, 0});
}

TEST_CASE("shifted_power agrees with the oracles on rows with leading zeros") {
    const auto check_ring = [](const auto& ring, std::uint64_t seed) {
        auto rng = make_rng(seed);
        for (int trial = 0; trial < 10; ++trial) {
            const std::size_t zeros = 1 + trial % 3;
            const std::size_t n = zeros + 1 + trial % 4;
            auto row = random_elements(ring, rng, n);
            for (std::size_t i = 0; i < zeros; ++i) row[i] = ring.zero();
            SemicirculantSpec spec(ring, std::move(row));
            for (std::uint64_t k = 0; k <= 6; ++k) {
                check_rows_equal(ring, shifted_power(spec, k).row, power(spec, k).row);
                check_rows_equal(ring, shifted_power(spec, k).row,
                                 naive_power(spec, k).row);
            }
        }
    };
    check_ring(IntegerRing{}, 431);
    check_ring(ModularRing{Int(8)}, 432);
    check_ring(ModularRing{Int(12)}, 433);
}

TEST_CASE("division_recursion_power applies exactly when the units exist") {
    ModularRing m101{Int(101)};
    const auto spec = spec_of(m101, {5, 4, 3, 2, 1});
    const auto via_division = division_recursion_power(spec, 3);
    REQUIRE(via_division.has_value());
    check_rows_equal(m101, via_division->row, power(spec, 3).row);

    // 2 is not a unit mod 8, so the division route must refuse.
    ModularRing m8{Int(8)};
    CHECK_FALSE(division_recursion_power(spec_of(m8, {2, 4, 2, 3}), 3).has_value());

    // Over Z the indices 2..N-1 are not units either.
    IntegerRing z;
    CHECK_FALSE(division_recursion_power(spec_of(z, {1, 5, 7}), 2).has_value());
    // ...but order 2 only needs the unit index 1 and a unit diagonal.
    const auto tiny = division_recursion_power(spec_of(z, {1, 9}), 4);
    REQUIRE(tiny.has_value());
    check_rows_equal(z, tiny->row, std::vector<Int>{1, 36});

    const auto identity_like = division_recursion_power(spec_of(m101, {1, 0, 0, 0}), 9);
    REQUIRE(identity_like.has_value());
    check_rows_equal(m101, identity_like->row, std::vector<Int>{1, 0, 0, 0});

    // Zero diagonal is never invertible.
    CHECK_FALSE(division_recursion_power(spec_of(m101, {0, 1, 2}), 2).has_value());
}

TEST_CASE("division_recursion_power agrees with the engine over a prime field") {
    ModularRing m101{Int(101)};
    auto rng = make_rng(441);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 1 + trial % 7;
        auto row = random_elements(m101, rng, n, 0, 100);
        row[0] = m101.from_integer(Int(1 + trial % 100));  // keep the diagonal a unit
        SemicirculantSpec spec(m101, std::move(row));
        for (std::uint64_t k = 0; k <= 8; ++k) {
            const auto via_division = division_recursion_power(spec, k);
            REQUIRE(via_division.has_value());
            check_rows_equal(m101, via_division->row, power(spec, k).row);
        }
    }
}
