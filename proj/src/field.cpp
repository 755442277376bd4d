#include "nxmds/field.hpp"

#include <mutex>
#include <sstream>

#include "nxmds/error.hpp"
#include "nxmds/poly.hpp"
#include "nxmds/rng.hpp"

namespace nxmds {

namespace {

using u128 = unsigned __int128;

constexpr std::uint64_t kTableLimit = 1U << 16;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) noexcept {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e > 0) {
        if (e & 1U) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1U;
    }
    return r;
}

bool checked_pow(std::uint64_t p, unsigned s, std::uint64_t& out) noexcept {
    u128 acc = 1;
    for (unsigned i = 0; i < s; ++i) {
        acc *= p;
        if (acc > (static_cast<u128>(1) << 63)) return false;
    }
    out = static_cast<std::uint64_t>(acc);
    return true;
}

}  // namespace

bool is_prime(std::uint64_t x) noexcept {
    if (x < 2) return false;
    for (std::uint64_t sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (x % sp == 0) return x == sp;
    }
    // deterministic Miller-Rabin for 64-bit inputs
    std::uint64_t d = x - 1;
    unsigned r = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++r;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t y = powmod(a, d, x);
        if (y == 1 || y == x - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < r; ++i) {
            y = mulmod(y, y, x);
            if (y == x - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t x) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t f = 2; f * f <= x; ++f) {
        if (x % f != 0) continue;
        out.push_back(f);
        while (x % f == 0) x /= f;
        if (x > 1 && is_prime(x)) break;
    }
    if (x > 1) out.push_back(x);
    return out;
}

std::optional<PrimePower> as_prime_power(std::uint64_t q) noexcept {
    if (q < 2) return std::nullopt;
    if (is_prime(q)) return PrimePower{q, 1, q};
    for (std::uint64_t p = 2; p * p <= q; ++p) {
        if (q % p != 0) continue;
        unsigned s = 0;
        std::uint64_t v = q;
        while (v % p == 0) {
            v /= p;
            ++s;
        }
        if (v != 1) return std::nullopt;
        return PrimePower{p, s, q};
    }
    return std::nullopt;
}

PrimePower next_prime_power(std::uint64_t x) {
    if (x < 2) throw Error(ErrorCode::InvalidArgument, "next_prime_power requires x >= 2");
    for (std::uint64_t v = x;; ++v) {
        if (auto pp = as_prime_power(v)) return *pp;
    }
}

unsigned ceil_log2(std::uint64_t x) noexcept {
    unsigned b = 0;
    while (b < 64 && (std::uint64_t{1} << b) < x) ++b;
    return b;
}

unsigned floor_log2(std::uint64_t x) noexcept {
    unsigned b = 0;
    while (x > 1) {
        x >>= 1U;
        ++b;
    }
    return b;
}

struct Field::Impl {
    std::uint64_t p = 0;
    unsigned s = 1;
    std::uint64_t q = 0;
    std::vector<std::uint64_t> modulus;
    unsigned bits = 0;
    // log/antilog tables for small extension fields
    std::vector<std::uint32_t> log;
    std::vector<std::uint32_t> exp;

    mutable std::once_flag generator_once;
    mutable Elem generator{0};
};

Field Field::make(std::uint64_t p, unsigned s) {
    if (!is_prime(p)) throw Error(ErrorCode::NonPrimeCharacteristic, std::to_string(p) + " is not prime");
    if (s < 1) throw Error(ErrorCode::InvalidArgument, "extension degree must be >= 1");
    auto impl = std::make_shared<Impl>();
    impl->p = p;
    impl->s = s;
    if (!checked_pow(p, s, impl->q)) throw Error(ErrorCode::InvalidArgument, "field order exceeds 2^63");
    impl->bits = ceil_log2(impl->q);
    if (s == 1) {
        impl->modulus = {0, 1};
        return Field(std::move(impl));
    }

    const Field prime = Field::make(p, 1);
    const poly::Poly f = poly::lowest_irreducible(prime, s);
    impl->modulus.reserve(f.size());
    for (Elem c : f) impl->modulus.push_back(c.value);

    Field field(impl);
    if (impl->q <= kTableLimit) {
        const Elem g = field.primitive_element();
        impl->log.assign(impl->q, 0);
        impl->exp.assign(2 * (impl->q - 1), 0);
        Elem cur = field.one();
        for (std::uint64_t i = 0; i < impl->q - 1; ++i) {
            impl->exp[i] = static_cast<std::uint32_t>(cur.value);
            impl->exp[i + impl->q - 1] = static_cast<std::uint32_t>(cur.value);
            impl->log[cur.value] = static_cast<std::uint32_t>(i);
            cur = field.mul_poly(cur, g);
        }
    }
    return field;
}

Field Field::from_order(std::uint64_t q) {
    auto pp = as_prime_power(q);
    if (!pp) throw Error(ErrorCode::InvalidArgument, std::to_string(q) + " is not a prime power");
    return make(pp->p, pp->s);
}

std::uint64_t Field::characteristic() const noexcept { return impl_->p; }
unsigned Field::degree() const noexcept { return impl_->s; }
std::uint64_t Field::order() const noexcept { return impl_->q; }
const std::vector<std::uint64_t>& Field::modulus() const noexcept { return impl_->modulus; }
unsigned Field::bit_width() const noexcept { return impl_->bits; }
unsigned Field::symbol_bytes() const noexcept { return (impl_->bits + 7) / 8; }

Elem Field::element(std::uint64_t v) const {
    if (v >= impl_->q) throw Error(ErrorCode::InvalidArgument, "value " + std::to_string(v) + " outside " + describe());
    return Elem{v};
}

Elem Field::from_integer(std::uint64_t v) const noexcept { return Elem{v % impl_->p}; }

std::vector<std::uint64_t> Field::coefficients(Elem a) const {
    std::vector<std::uint64_t> c(impl_->s, 0);
    std::uint64_t v = a.value;
    for (unsigned i = 0; i < impl_->s; ++i) {
        c[i] = v % impl_->p;
        v /= impl_->p;
    }
    return c;
}

Elem Field::from_coefficients(std::span<const std::uint64_t> coeffs) const {
    if (coeffs.size() != impl_->s) throw Error(ErrorCode::ShapeMismatch, "coefficient vector length differs from s");
    std::uint64_t v = 0;
    for (std::size_t i = coeffs.size(); i > 0; --i) {
        if (coeffs[i - 1] >= impl_->p) throw Error(ErrorCode::InvalidArgument, "coefficient outside F_p");
        v = v * impl_->p + coeffs[i - 1];
    }
    return Elem{v};
}

Elem Field::add(Elem a, Elem b) const noexcept {
    const std::uint64_t p = impl_->p;
    if (impl_->s == 1) {
        const std::uint64_t r = a.value + b.value;
        return Elem{r >= p ? r - p : r};
    }
    if (p == 2) return Elem{a.value ^ b.value};
    std::uint64_t out = 0, place = 1;
    std::uint64_t x = a.value, y = b.value;
    for (unsigned i = 0; i < impl_->s; ++i) {
        std::uint64_t d = x % p + y % p;
        if (d >= p) d -= p;
        out += d * place;
        place *= p;
        x /= p;
        y /= p;
    }
    return Elem{out};
}

Elem Field::neg(Elem a) const noexcept {
    const std::uint64_t p = impl_->p;
    if (impl_->s == 1) return Elem{a.value == 0 ? 0 : p - a.value};
    if (p == 2) return a;
    std::uint64_t out = 0, place = 1, x = a.value;
    for (unsigned i = 0; i < impl_->s; ++i) {
        const std::uint64_t d = x % p;
        out += (d == 0 ? 0 : p - d) * place;
        place *= p;
        x /= p;
    }
    return Elem{out};
}

Elem Field::sub(Elem a, Elem b) const noexcept {
    if (impl_->s == 1) {
        return Elem{a.value >= b.value ? a.value - b.value : a.value + impl_->p - b.value};
    }
    return add(a, neg(b));
}

Elem Field::mul(Elem a, Elem b) const noexcept {
    if (impl_->s == 1) return Elem{mulmod(a.value, b.value, impl_->p)};
    if (a.value == 0 || b.value == 0) return Elem{0};
    if (!impl_->exp.empty()) return Elem{impl_->exp[impl_->log[a.value] + impl_->log[b.value]]};
    return mul_poly(a, b);
}

Elem Field::mul_poly(Elem a, Elem b) const noexcept {
    const std::uint64_t p = impl_->p;
    const unsigned s = impl_->s;
    std::vector<std::uint64_t> x(s), y(s), prod(2 * s - 1, 0);
    for (unsigned i = 0; i < s; ++i) {
        x[i] = a.value % p;
        a.value /= p;
        y[i] = b.value % p;
        b.value /= p;
    }
    for (unsigned i = 0; i < s; ++i)
        for (unsigned j = 0; j < s; ++j) prod[i + j] = (prod[i + j] + mulmod(x[i], y[j], p)) % p;
    const auto& m = impl_->modulus;
    for (unsigned d = 2 * s - 2; d >= s; --d) {
        const std::uint64_t c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        for (unsigned i = 0; i < s; ++i) {
            const std::uint64_t t = mulmod(c, m[i], p);
            auto& slot = prod[d - s + i];
            slot = slot >= t ? slot - t : slot + p - t;
        }
    }
    std::uint64_t v = 0;
    for (unsigned i = s; i > 0; --i) v = v * p + prod[i - 1];
    return Elem{v};
}

Elem Field::inv(Elem a) const {
    if (a.value == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero in " + describe());
    if (impl_->s == 1) {
        // extended Euclid on integers
        std::int64_t t = 0, nt = 1;
        std::uint64_t r = impl_->p, nr = a.value;
        while (nr != 0) {
            const std::uint64_t qt = r / nr;
            const std::int64_t tmp_t = t - static_cast<std::int64_t>(qt) * nt;
            t = nt;
            nt = tmp_t;
            const std::uint64_t tmp_r = r - qt * nr;
            r = nr;
            nr = tmp_r;
        }
        if (t < 0) t += static_cast<std::int64_t>(impl_->p);
        return Elem{static_cast<std::uint64_t>(t)};
    }
    if (!impl_->exp.empty()) return Elem{impl_->exp[(impl_->q - 1 - impl_->log[a.value]) % (impl_->q - 1)]};
    return pow(a, impl_->q - 2);
}

Elem Field::div(Elem a, Elem b) const { return mul(a, inv(b)); }

Elem Field::pow(Elem a, std::uint64_t e) const noexcept {
    Elem r = one();
    while (e > 0) {
        if (e & 1U) r = mul(r, a);
        a = mul(a, a);
        e >>= 1U;
    }
    return r;
}

Elem Field::primitive_element() const {
    std::call_once(impl_->generator_once, [this] {
        const std::uint64_t q = impl_->q;
        if (q == 2) {
            impl_->generator = Elem{1};
            return;
        }
        const auto factors = distinct_prime_factors(q - 1);
        // tables are not built yet when this runs during construction
        auto slow_pow = [this](Elem a, std::uint64_t e) {
            Elem r = one();
            while (e > 0) {
                if (e & 1U) r = impl_->s == 1 ? mul(r, a) : mul_poly(r, a);
                a = impl_->s == 1 ? mul(a, a) : mul_poly(a, a);
                e >>= 1U;
            }
            return r;
        };
        for (std::uint64_t v = 2; v < q; ++v) {
            bool ok = true;
            for (std::uint64_t f : factors) {
                if (slow_pow(Elem{v}, (q - 1) / f).value == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                impl_->generator = Elem{v};
                return;
            }
        }
    });
    return impl_->generator;
}

Elem Field::random(Rng& rng) const { return Elem{rng.uniform(impl_->q)}; }

Elem Field::random_nonzero(Rng& rng) const { return Elem{1 + rng.uniform(impl_->q - 1)}; }

std::string Field::describe() const {
    std::ostringstream os;
    os << "F_" << impl_->q;
    if (impl_->s > 1) os << " (p=" << impl_->p << ", s=" << impl_->s << ")";
    return os.str();
}

bool operator==(const Field& a, const Field& b) noexcept {
    if (a.impl_ == b.impl_) return true;
    return a.impl_->p == b.impl_->p && a.impl_->s == b.impl_->s && a.impl_->modulus == b.impl_->modulus;
}

FieldElement::FieldElement(Field field, Elem value) : field_(std::move(field)), value_(value) {
    if (!field_.contains(value_)) throw Error(ErrorCode::InvalidArgument, "element outside " + field_.describe());
}

namespace {
void require_same(const FieldElement& a, const FieldElement& b) {
    if (!(a.field() == b.field()))
        throw Error(ErrorCode::FieldMismatch, a.field().describe() + " vs " + b.field().describe());
}
}  // namespace

FieldElement FieldElement::inverse() const { return {field_, field_.inv(value_)}; }
FieldElement FieldElement::pow(std::uint64_t e) const { return {field_, field_.pow(value_, e)}; }

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    require_same(a, b);
    return {a.field_, a.field_.add(a.value_, b.value_)};
}
FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    require_same(a, b);
    return {a.field_, a.field_.sub(a.value_, b.value_)};
}
FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    require_same(a, b);
    return {a.field_, a.field_.mul(a.value_, b.value_)};
}
FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    require_same(a, b);
    return {a.field_, a.field_.div(a.value_, b.value_)};
}

}  // namespace nxmds
