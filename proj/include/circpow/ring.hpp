#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "circpow/integers.hpp"

namespace circpow {

/// A commutative ring with identity, presented through its operations and the
/// canonical map from the integers. Descriptors are immutable values, cheap to
/// copy and safe to share between threads; elements are plain values that are
/// only ever interpreted through their descriptor.
template <typename R>
concept ring_descriptor =
    std::copyable<R> && std::copyable<typename R::element> &&
    requires(const R& ring, const typename R::element& a, const typename R::element& b,
             const Int& n) {
        { ring.zero() } -> std::same_as<typename R::element>;
        { ring.one() } -> std::same_as<typename R::element>;
        { ring.add(a, b) } -> std::same_as<typename R::element>;
        { ring.negate(a) } -> std::same_as<typename R::element>;
        { ring.multiply(a, b) } -> std::same_as<typename R::element>;
        { ring.equals(a, b) } -> std::same_as<bool>;
        { ring.from_integer(n) } -> std::same_as<typename R::element>;
        { ring.try_invert(a) } -> std::same_as<std::optional<typename R::element>>;
        { ring.to_string(a) } -> std::same_as<std::string>;
        { ring.name() } -> std::same_as<std::string>;
    };

/// Arbitrary-precision signed integers. try_invert succeeds only on +1/-1.
class IntegerRing {
public:
    using element = Int;

    element zero() const { return 0; }
    element one() const { return 1; }
    element add(const element& a, const element& b) const { return a + b; }
    element negate(const element& a) const { return -a; }
    element multiply(const element& a, const element& b) const { return a * b; }
    bool equals(const element& a, const element& b) const { return a == b; }
    element from_integer(const Int& n) const { return n; }

    std::optional<element> try_invert(const element& a) const {
        if (a == 1 || a == -1) return a;
        return std::nullopt;
    }

    std::string to_string(const element& a) const { return a.str(); }
    std::string name() const { return "Z"; }
};

/// Residues modulo m, m >= 2 and not necessarily prime. Elements are kept in
/// canonical form 0..m-1; try_invert uses the extended gcd and fails whenever
/// gcd(a, m) != 1.
class ModularRing {
public:
    using element = Int;

    explicit ModularRing(Int modulus) : modulus_(std::move(modulus)) {
        if (modulus_ < 2) throw std::invalid_argument("modulus must be >= 2");
    }

    const Int& modulus() const { return modulus_; }

    element zero() const { return 0; }
    element one() const { return 1; }
    element add(const element& a, const element& b) const { return reduce(a + b); }
    element negate(const element& a) const { return reduce(-a); }
    element multiply(const element& a, const element& b) const { return reduce(a * b); }
    bool equals(const element& a, const element& b) const { return reduce(a) == reduce(b); }
    element from_integer(const Int& n) const { return reduce(n); }

    std::optional<element> try_invert(const element& a) const {
        Int old_r = reduce(a), r = modulus_;
        Int old_s = 1, s = 0;
        while (r != 0) {
            Int q = old_r / r;
            Int tmp = old_r - q * r;
            old_r = std::move(r);
            r = std::move(tmp);
            tmp = old_s - q * s;
            old_s = std::move(s);
            s = std::move(tmp);
        }
        if (old_r != 1) return std::nullopt;
        return reduce(old_s);
    }

    std::string to_string(const element& a) const { return reduce(a).str(); }
    std::string name() const { return "Z/" + modulus_.str(); }

private:
    Int reduce(const Int& x) const {
        Int r = x % modulus_;
        if (r < 0) r += modulus_;
        return r;
    }

    Int modulus_;
};

static_assert(ring_descriptor<IntegerRing>);
static_assert(ring_descriptor<ModularRing>);

template <ring_descriptor R>
typename R::element sub(const R& ring, const typename R::element& a,
                        const typename R::element& b) {
    return ring.add(a, ring.negate(b));
}

template <ring_descriptor R>
bool is_zero(const R& ring, const typename R::element& a) {
    return ring.equals(a, ring.zero());
}

/// a^e by square-and-multiply. pow(a, 0) is one for every a, including zero;
/// the empty product convention is what keeps the power formulas valid when
/// the diagonal element is not a unit.
template <ring_descriptor R>
typename R::element pow(const R& ring, typename R::element a, std::uint64_t e) {
    typename R::element acc = ring.one();
    while (e != 0) {
        if (e & 1) acc = ring.multiply(acc, a);
        e >>= 1;
        if (e != 0) a = ring.multiply(a, a);
    }
    return acc;
}

/// Parsed form of a CLI ring specification: "Z" or "Z/<m>" (e.g. "Z/8").
struct RingSpec {
    bool modular = false;
    Int modulus = 0;
};

inline RingSpec parse_ring_spec(std::string_view text) {
    if (text == "Z") return {};
    if (text.size() > 2 && text.substr(0, 2) == "Z/") {
        std::string_view digits = text.substr(2);
        for (char c : digits) {
            if (c < '0' || c > '9')
                throw std::invalid_argument("bad ring spec \"" + std::string(text) +
                                            "\": expected Z or Z/<m>");
        }
        Int m{std::string(digits)};
        if (m < 2)
            throw std::invalid_argument("bad ring spec \"" + std::string(text) +
                                        "\": modulus must be >= 2");
        RingSpec spec;
        spec.modular = true;
        spec.modulus = std::move(m);
        return spec;
    }
    throw std::invalid_argument("bad ring spec \"" + std::string(text) +
                                "\": expected Z or Z/<m>");
}

/// Parses a ring spec string and calls f with the concrete ring instance.
template <typename F>
decltype(auto) with_ring(std::string_view spec, F&& f) {
    RingSpec parsed = parse_ring_spec(spec);
    if (parsed.modular) return std::forward<F>(f)(ModularRing(parsed.modulus));
    return std::forward<F>(f)(IntegerRing{});
}

}  // namespace circpow
