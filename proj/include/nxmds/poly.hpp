#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nxmds/field.hpp"

// Dense univariate polynomials over a runtime field. Coefficients ascend in
// degree; the zero polynomial is the empty vector.
namespace nxmds::poly {

using Poly = std::vector<Elem>;

void trim(Poly& f) noexcept;
int degree(const Poly& f) noexcept;

Poly add(const Field& F, const Poly& a, const Poly& b);
Poly sub(const Field& F, const Poly& a, const Poly& b);
Poly mul(const Field& F, const Poly& a, const Poly& b);
Poly scale(const Field& F, const Poly& a, Elem c);
std::pair<Poly, Poly> divmod(const Field& F, const Poly& a, const Poly& b);
Poly mod(const Field& F, const Poly& a, const Poly& m);
Poly monic(const Field& F, const Poly& a);
Poly gcd(const Field& F, Poly a, Poly b);
Poly powmod(const Field& F, const Poly& base, std::uint64_t e, const Poly& m);
Elem eval(const Field& F, const Poly& f, Elem x) noexcept;

/// Rabin's test: f of degree d is irreducible iff x^{q^d} = x mod f and
/// gcd(x^{q^{d/r}} - x, f) = 1 for every prime r | d.
bool is_irreducible(const Field& F, const Poly& f);

/// Lowest monic irreducible of the given degree, comparing the coefficient
/// of x^{d-1} first. Degree 1 yields x + 0.
Poly lowest_irreducible(const Field& F, unsigned deg);

}  // namespace nxmds::poly
