#include "nxmds/poly.hpp"

#include <algorithm>

#include "nxmds/error.hpp"

namespace nxmds::poly {

void trim(Poly& f) noexcept {
    while (!f.empty() && f.back().value == 0) f.pop_back();
}

int degree(const Poly& f) noexcept {
    for (std::size_t i = f.size(); i > 0; --i)
        if (f[i - 1].value != 0) return static_cast<int>(i - 1);
    return -1;
}

Poly add(const Field& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), F.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
    trim(r);
    return r;
}

Poly sub(const Field& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), F.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
    trim(r);
    return r;
}

Poly mul(const Field& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, F.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].value == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

Poly scale(const Field& F, const Poly& a, Elem c) {
    Poly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
    trim(r);
    return r;
}

std::pair<Poly, Poly> divmod(const Field& F, const Poly& a, const Poly& b) {
    const int db = degree(b);
    if (db < 0) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
    Poly rem = a;
    trim(rem);
    const int da = degree(rem);
    if (da < db) return {Poly{}, rem};
    Poly quot(static_cast<std::size_t>(da - db + 1), F.zero());
    const Elem lead_inv = F.inv(b[static_cast<std::size_t>(db)]);
    for (int d = da; d >= db; --d) {
        const Elem c = rem[static_cast<std::size_t>(d)];
        if (c.value == 0) continue;
        const Elem f = F.mul(c, lead_inv);
        quot[static_cast<std::size_t>(d - db)] = f;
        for (int i = 0; i <= db; ++i) {
            auto& slot = rem[static_cast<std::size_t>(d - db + i)];
            slot = F.sub(slot, F.mul(f, b[static_cast<std::size_t>(i)]));
        }
    }
    trim(quot);
    trim(rem);
    return {quot, rem};
}

Poly mod(const Field& F, const Poly& a, const Poly& m) { return divmod(F, a, m).second; }

Poly monic(const Field& F, const Poly& a) {
    const int d = degree(a);
    if (d < 0) return {};
    return scale(F, a, F.inv(a[static_cast<std::size_t>(d)]));
}

Poly gcd(const Field& F, Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(F, a);
}

Poly powmod(const Field& F, const Poly& base, std::uint64_t e, const Poly& m) {
    Poly result{F.one()};
    result = mod(F, result, m);
    Poly b = mod(F, base, m);
    while (e > 0) {
        if (e & 1U) result = mod(F, mul(F, result, b), m);
        e >>= 1U;
        if (e > 0) b = mod(F, mul(F, b, b), m);
    }
    return result;
}

Elem eval(const Field& F, const Poly& f, Elem x) noexcept {
    Elem acc = F.zero();
    for (std::size_t i = f.size(); i > 0; --i) acc = F.add(F.mul(acc, x), f[i - 1]);
    return acc;
}

bool is_irreducible(const Field& F, const Poly& f) {
    const int d = degree(f);
    if (d < 1) return false;
    if (d == 1) return true;
    const std::uint64_t q = F.order();
    const Poly x{F.zero(), F.one()};
    // frob[i] = x^{q^i} mod f
    std::vector<Poly> frob(static_cast<std::size_t>(d) + 1);
    frob[0] = mod(F, x, f);
    for (int i = 1; i <= d; ++i) frob[static_cast<std::size_t>(i)] = powmod(F, frob[static_cast<std::size_t>(i) - 1], q, f);
    if (sub(F, frob[static_cast<std::size_t>(d)], frob[0]).size() != 0) return false;
    for (std::uint64_t r : distinct_prime_factors(static_cast<std::uint64_t>(d))) {
        const Poly h = sub(F, frob[static_cast<std::size_t>(d) / r], frob[0]);
        if (degree(gcd(F, f, h)) != 0) return false;
    }
    return true;
}

Poly lowest_irreducible(const Field& F, unsigned deg) {
    if (deg == 0) throw Error(ErrorCode::InvalidArgument, "irreducible degree must be >= 1");
    const std::uint64_t q = F.order();
    Poly f(deg + 1, F.zero());
    f[deg] = F.one();
    if (deg == 1) return f;
    // digits of a counter in base q; digit 0 is the constant term
    std::vector<std::uint64_t> digits(deg, 0);
    for (;;) {
        if (digits[0] != 0) {
            for (unsigned i = 0; i < deg; ++i) f[i] = Elem{digits[i]};
            if (is_irreducible(F, f)) return f;
        }
        unsigned i = 0;
        while (i < deg && ++digits[i] == q) digits[i++] = 0;
        if (i == deg) break;
    }
    throw Error(ErrorCode::NoIrreducibleFound, "no irreducible polynomial of degree " + std::to_string(deg));
}

}  // namespace nxmds::poly
