#include "nxmds/ext_field.hpp"

#include "nxmds/error.hpp"
#include "nxmds/poly.hpp"
#include "nxmds/rng.hpp"

namespace nxmds {

ExtField::ExtField(Field base, unsigned m) : base_(std::move(base)), m_(m) {
    if (m_ < 1) throw Error(ErrorCode::InvalidArgument, "extension degree must be >= 1");
    modulus_ = poly::lowest_irreducible(base_, m_);
}

std::uint64_t ExtField::order() const {
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < m_; ++i) {
        acc *= base_.order();
        if (acc > ~std::uint64_t{0}) throw Error(ErrorCode::InvalidArgument, "extension order exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(acc);
}

ExtElem ExtField::one() const {
    ExtElem e = zero();
    e[0] = base_.one();
    return e;
}

bool ExtField::is_zero(const ExtElem& a) const noexcept {
    for (Elem c : a)
        if (c.value != 0) return false;
    return true;
}

ExtElem ExtField::add(const ExtElem& a, const ExtElem& b, OpCounter* ops) const {
    ExtElem r(m_);
    for (unsigned i = 0; i < m_; ++i) r[i] = base_.add(a[i], b[i]);
    if (ops) ops->adds += m_;
    return r;
}

ExtElem ExtField::sub(const ExtElem& a, const ExtElem& b) const {
    ExtElem r(m_);
    for (unsigned i = 0; i < m_; ++i) r[i] = base_.sub(a[i], b[i]);
    return r;
}

ExtElem ExtField::mul(const ExtElem& a, const ExtElem& b, OpCounter* ops) const {
    const Field& F = base_;
    std::vector<Elem> prod(2 * m_ - 1, F.zero());
    for (unsigned i = 0; i < m_; ++i)
        for (unsigned j = 0; j < m_; ++j) prod[i + j] = F.add(prod[i + j], F.mul(a[i], b[j]));
    if (ops) {
        ops->muls += std::uint64_t{m_} * m_;
        ops->adds += std::uint64_t{m_} * m_;
    }
    // z^m = -(c_0 + ... + c_{m-1} z^{m-1})
    for (unsigned d = 2 * m_ - 2; d >= m_; --d) {
        const Elem c = prod[d];
        for (unsigned i = 0; i < m_; ++i) {
            auto& slot = prod[d - m_ + i];
            slot = F.sub(slot, F.mul(c, modulus_[i]));
        }
        if (ops) {
            ops->muls += m_;
            ops->adds += m_;
        }
    }
    prod.resize(m_);
    return prod;
}

ExtElem ExtField::pow(ExtElem a, std::uint64_t e) const {
    ExtElem r = one();
    while (e > 0) {
        if (e & 1U) r = mul(r, a);
        a = mul(a, a);
        e >>= 1U;
    }
    return r;
}

ExtElem ExtField::inv(const ExtElem& a) const {
    if (is_zero(a)) throw Error(ErrorCode::DivisionByZero, "inverse of zero in extension field");
    // extended Euclid: s*a + t*f = g, with g constant
    const Field& F = base_;
    poly::Poly r0 = modulus_, r1(a.begin(), a.end());
    poly::trim(r1);
    poly::Poly s0{}, s1{F.one()};
    while (poly::degree(r1) > 0) {
        auto [qt, rem] = poly::divmod(F, r0, r1);
        poly::Poly s2 = poly::sub(F, s0, poly::mul(F, qt, s1));
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    const Elem g_inv = F.inv(r1[0]);
    poly::Poly res = poly::scale(F, s1, g_inv);
    ExtElem out = zero();
    for (std::size_t i = 0; i < res.size(); ++i) out[i] = res[i];
    return out;
}

std::vector<Elem> ExtField::coords(const ExtElem& a) const { return a; }

ExtElem ExtField::from_coords(std::span<const Elem> c) const {
    if (c.size() != m_) throw Error(ErrorCode::ShapeMismatch, "coordinate vector length differs from m");
    for (Elem e : c)
        if (!base_.contains(e)) throw Error(ErrorCode::InvalidArgument, "coordinate outside base field");
    return ExtElem(c.begin(), c.end());
}

ExtElem ExtField::element_at(std::uint64_t index) const {
    ExtElem e(m_);
    const std::uint64_t q = base_.order();
    for (unsigned i = 0; i < m_; ++i) {
        e[i] = Elem{index % q};
        index /= q;
    }
    return e;
}

std::uint64_t ExtField::index_of(const ExtElem& a) const {
    std::uint64_t v = 0;
    for (unsigned i = m_; i > 0; --i) v = v * base_.order() + a[i - 1].value;
    return v;
}

ExtElem ExtField::random(Rng& rng) const {
    ExtElem e(m_);
    for (auto& c : e) c = base_.random(rng);
    return e;
}

}  // namespace nxmds
