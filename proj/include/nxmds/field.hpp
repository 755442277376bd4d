#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nxmds {

class Rng;

/// A symbol of F_q. The value packs the polynomial-basis coefficient vector
/// (c_0, ..., c_{s-1}) over F_p as the integer sum c_i p^i, so every field
/// element has exactly one representation in [0, q).
struct Elem {
    std::uint64_t value = 0;

    friend constexpr auto operator<=>(const Elem&, const Elem&) = default;
};

struct PrimePower {
    std::uint64_t p = 0;
    unsigned s = 0;
    std::uint64_t q = 0;
};

bool is_prime(std::uint64_t x) noexcept;
std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t x);
std::optional<PrimePower> as_prime_power(std::uint64_t q) noexcept;

/// Smallest prime power >= x (x >= 2).
PrimePower next_prime_power(std::uint64_t x);

/// ceil(log2 x) for x >= 1.
unsigned ceil_log2(std::uint64_t x) noexcept;
/// floor(log2 x) for x >= 1.
unsigned floor_log2(std::uint64_t x) noexcept;

/// The finite field F_q, q = p^s, in polynomial basis over F_p.
///
/// A Field is a cheap handle onto immutable shared state; copies compare equal
/// and can be used from any thread. For s = 1 the modulus is the placeholder
/// x + 0 and arithmetic is plain modular arithmetic. For s > 1 the modulus is
/// the lowest monic irreducible polynomial of degree s in lexicographic order
/// (coefficient of x^{s-1} most significant).
class Field {
   public:
    static Field make(std::uint64_t p, unsigned s);
    static Field from_order(std::uint64_t q);

    std::uint64_t characteristic() const noexcept;
    unsigned degree() const noexcept;
    std::uint64_t order() const noexcept;
    /// Coefficients over F_p, ascending degree, length s + 1, monic.
    const std::vector<std::uint64_t>& modulus() const noexcept;
    /// Whole bits per symbol, ceil(log2 q).
    unsigned bit_width() const noexcept;
    /// Bytes per serialized symbol, ceil(bit_width / 8).
    unsigned symbol_bytes() const noexcept;

    Elem zero() const noexcept { return Elem{0}; }
    Elem one() const noexcept { return Elem{1}; }
    bool contains(Elem a) const noexcept { return a.value < order(); }
    /// Element with packed value v; throws InvalidArgument when v >= q.
    Elem element(std::uint64_t v) const;
    /// Embedding of the prime-field integer v mod p.
    Elem from_integer(std::uint64_t v) const noexcept;

    std::vector<std::uint64_t> coefficients(Elem a) const;
    Elem from_coefficients(std::span<const std::uint64_t> coeffs) const;

    Elem add(Elem a, Elem b) const noexcept;
    Elem sub(Elem a, Elem b) const noexcept;
    Elem neg(Elem a) const noexcept;
    Elem mul(Elem a, Elem b) const noexcept;
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const;
    Elem pow(Elem a, std::uint64_t e) const noexcept;

    /// A generator of the multiplicative group (smallest packed value).
    Elem primitive_element() const;

    Elem random(Rng& rng) const;
    Elem random_nonzero(Rng& rng) const;

    std::string describe() const;

    friend bool operator==(const Field& a, const Field& b) noexcept;

   private:
    struct Impl;
    explicit Field(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    Elem mul_poly(Elem a, Elem b) const noexcept;

    std::shared_ptr<const Impl> impl_;
};

/// Field element bound to its field; arithmetic between elements of different
/// fields throws FieldMismatch.
class FieldElement {
   public:
    FieldElement(Field field, Elem value);
    FieldElement(Field field, std::uint64_t value) : FieldElement(std::move(field), Elem{value}) {}

    const Field& field() const noexcept { return field_; }
    Elem value() const noexcept { return value_; }
    bool is_zero() const noexcept { return value_.value == 0; }

    FieldElement inverse() const;
    FieldElement pow(std::uint64_t e) const;

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
    friend bool operator==(const FieldElement& a, const FieldElement& b) noexcept {
        return a.field_ == b.field_ && a.value_ == b.value_;
    }

   private:
    Field field_;
    Elem value_;
};

}  // namespace nxmds
