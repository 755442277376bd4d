#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nxmds/field.hpp"

namespace nxmds {

/// Tallies base-field operations; passed to instrumented routines.
struct OpCounter {
    std::uint64_t muls = 0;
    std::uint64_t adds = 0;

    std::uint64_t total() const noexcept { return muls + adds; }
};

/// Element of F_{q^m}: its coordinate vector over F_q in the basis
/// 1, z, ..., z^{m-1}.
using ExtElem = std::vector<Elem>;

/// F_{q^m} built as a degree-m extension of a base field F_q.
class ExtField {
   public:
    ExtField(Field base, unsigned m);

    const Field& base() const noexcept { return base_; }
    unsigned degree() const noexcept { return m_; }
    /// Monic modulus over F_q, ascending, length m + 1.
    const std::vector<Elem>& modulus() const noexcept { return modulus_; }
    /// q^m; throws InvalidArgument if it does not fit in 64 bits.
    std::uint64_t order() const;

    ExtElem zero() const { return ExtElem(m_, base_.zero()); }
    ExtElem one() const;
    bool is_zero(const ExtElem& a) const noexcept;

    ExtElem add(const ExtElem& a, const ExtElem& b, OpCounter* ops = nullptr) const;
    ExtElem sub(const ExtElem& a, const ExtElem& b) const;
    ExtElem mul(const ExtElem& a, const ExtElem& b, OpCounter* ops = nullptr) const;
    ExtElem pow(ExtElem a, std::uint64_t e) const;
    ExtElem inv(const ExtElem& a) const;

    /// The F_q-linear coordinate map F_{q^m} -> F_q^m.
    std::vector<Elem> coords(const ExtElem& a) const;
    ExtElem from_coords(std::span<const Elem> c) const;

    /// Enumeration helpers: index in [0, q^m) <-> element.
    ExtElem element_at(std::uint64_t index) const;
    std::uint64_t index_of(const ExtElem& a) const;

    ExtElem random(Rng& rng) const;

    friend bool operator==(const ExtField& a, const ExtField& b) noexcept {
        return a.base_ == b.base_ && a.m_ == b.m_ && a.modulus_ == b.modulus_;
    }

   private:
    Field base_;
    unsigned m_;
    std::vector<Elem> modulus_;
};

inline ExtField make_extension(const Field& base, unsigned m) { return ExtField(base, m); }

}  // namespace nxmds
