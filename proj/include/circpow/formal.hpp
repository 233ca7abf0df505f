#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "circpow/integers.hpp"
#include "circpow/ring.hpp"

namespace circpow {

/// One entry of a semicirculant power, held as a sparse sum
///     sum_p  coeff_p * a0^(k-p) * C(k,p)
/// with the exponent k left symbolic. Only the binomial index p and its
/// coefficient are stored; the a0 power is implicit because every transform
/// below moves the exponent and the binomial index in lockstep. Coefficients
/// are a0-free, and a stored coefficient is never ring zero.
template <ring_descriptor R>
struct FormalEntry {
    std::map<std::uint64_t, typename R::element> terms;

    bool identically_zero() const { return terms.empty(); }
};

/// Entries 0..max_m of A^k for A determined by a0 and the tail a1, a2, ...
template <ring_descriptor R>
struct FormalSequence {
    typename R::element a0;
    std::vector<FormalEntry<R>> entries;
};

/// The position-0 entry: a0^k * C(k,0).
template <ring_descriptor R>
FormalEntry<R> initial_entry(const R& ring) {
    FormalEntry<R> e;
    e.terms.emplace(0, ring.one());
    return e;
}

/// Shifts every binomial index p to p+1, coefficients unchanged. The implicit
/// a0 exponent k-p drops to k-p-1 at the same time, so the transform is a
/// pure key shift in this representation. A zero entry stays zero.
template <ring_descriptor R>
FormalEntry<R> hat(const FormalEntry<R>& e) {
    FormalEntry<R> out;
    for (const auto& [p, coeff] : e.terms) out.terms.emplace(p + 1, coeff);
    return out;
}

namespace detail {

// acc += scale * e, pruning coefficients that cancel to zero.
template <ring_descriptor R>
void accumulate_scaled(const R& ring, FormalEntry<R>& acc, const typename R::element& scale,
                       const FormalEntry<R>& e) {
    if (is_zero(ring, scale)) return;
    for (const auto& [p, coeff] : e.terms) {
        typename R::element contribution = ring.multiply(scale, coeff);
        auto it = acc.terms.find(p);
        if (it == acc.terms.end()) {
            if (!is_zero(ring, contribution)) acc.terms.emplace(p, std::move(contribution));
            continue;
        }
        it->second = ring.add(it->second, contribution);
        if (is_zero(ring, it->second)) acc.terms.erase(it);
    }
}

}  // namespace detail

/// Combines the hat-transformed entries for positions 0..m into the entry for
/// position m+1:  sum_{i=0..m} a_{i+1} * hats[m-i].  `a` holds a_1..a_{m+1}
/// (at least); `hats` holds exactly the m+1 transformed predecessors.
template <ring_descriptor R>
FormalEntry<R> next_entry(const R& ring, std::span<const typename R::element> a,
                          std::span<const FormalEntry<R>> hats) {
    if (a.size() < hats.size())
        throw std::invalid_argument("next_entry: need one tail value per transformed entry");
    FormalEntry<R> out;
    const std::size_t m = hats.size() - 1;
    for (std::size_t i = 0; i <= m; ++i)
        detail::accumulate_scaled(ring, out, a[i], hats[m - i]);
    return out;
}

/// Builds entries 0..max_m for the matrix with diagonal a0 and first-row tail
/// `tail` (zero-padded past its support). Sequential by construction: each
/// entry is combined from the hats of all of its predecessors.
template <ring_descriptor R>
FormalSequence<R> build_sequence(const R& ring, const typename R::element& a0,
                                 std::span<const typename R::element> tail,
                                 std::uint64_t max_m) {
    FormalSequence<R> seq;
    seq.a0 = a0;
    seq.entries.reserve(max_m + 1);
    seq.entries.push_back(initial_entry<R>(ring));

    std::vector<typename R::element> padded(tail.begin(), tail.end());
    if (padded.size() < max_m) padded.resize(max_m, ring.zero());

    std::vector<FormalEntry<R>> hats;
    hats.reserve(max_m);
    for (std::uint64_t m = 1; m <= max_m; ++m) {
        hats.push_back(hat(seq.entries.back()));
        seq.entries.push_back(next_entry<R>(
            ring, std::span<const typename R::element>(padded.data(), m),
            std::span<const FormalEntry<R>>(hats.data(), m)));
    }
    return seq;
}

/// Evaluates an entry at a concrete exponent k. Each term a0^(k-p)*C(k,p) is
/// read as 1 when k == p and 0 when k < p, which keeps the sum correct even
/// when a0 is zero or a zero divisor.
template <ring_descriptor R>
typename R::element evaluate(const R& ring, const FormalEntry<R>& e,
                             const typename R::element& a0, std::uint64_t k) {
    typename R::element acc = ring.zero();
    for (const auto& [p, coeff] : e.terms) {
        if (k < p) continue;
        if (k == p) {
            acc = ring.add(acc, coeff);
            continue;
        }
        typename R::element term = ring.multiply(coeff, pow(ring, a0, k - p));
        term = ring.multiply(term, ring.from_integer(binomial(k, p)));
        acc = ring.add(acc, term);
    }
    return acc;
}

/// Fixed rendering, stable for snapshot tests:
///   term  := COEFF "·a0^(k-" P ")·C(k," P ")"
/// terms joined by " + ", keys descending; the empty sum renders "0".
template <ring_descriptor R>
std::string render(const R& ring, const FormalEntry<R>& e) {
    if (e.terms.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = e.terms.rbegin(); it != e.terms.rend(); ++it) {
        if (!first) out << " + ";
        first = false;
        out << ring.to_string(it->second) << "·a0^(k-" << it->first << ")·C(k,"
            << it->first << ")";
    }
    return out.str();
}

}  // namespace circpow
