#pragma once

#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "uog/numtheory.hpp"

namespace uog {

/*
 * Dense univariate polynomial over a prime field, coefficients in ascending
 * degree, always trimmed so the last stored coefficient is nonzero. The
 * field is passed to every operation rather than stored.
 */
class FpPoly {
  public:
    FpPoly() = default;
    explicit FpPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }
    FpPoly(std::initializer_list<long> coeffs);

    static FpPoly constant(const BigInt & c) { return FpPoly(std::vector<BigInt>{c}); }
    static FpPoly x() { return FpPoly(std::vector<BigInt>{0, 1}); }
    static FpPoly monomial(std::size_t deg, const BigInt & c = 1);

    bool is_zero() const { return c_.empty(); }
    /* -1 for the zero polynomial */
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    /* coefficient of x^i (zero past the end) */
    BigInt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }
    const BigInt & lead() const { return c_.back(); }
    const std::vector<BigInt> & coeffs() const { return c_; }

    bool operator==(const FpPoly & o) const { return c_ == o.c_; }

  private:
    void trim();
    std::vector<BigInt> c_;
};

namespace poly {

/* Reduces every coefficient into [0, p). */
FpPoly reduce(const PrimeField & F, const FpPoly & a);

FpPoly add(const PrimeField & F, const FpPoly & a, const FpPoly & b);
FpPoly sub(const PrimeField & F, const FpPoly & a, const FpPoly & b);
FpPoly neg(const PrimeField & F, const FpPoly & a);
FpPoly mul(const PrimeField & F, const FpPoly & a, const FpPoly & b);
FpPoly scale(const PrimeField & F, const FpPoly & a, const BigInt & s);

/* Quotient and remainder; throws domain_error for a zero divisor. */
std::pair<FpPoly, FpPoly> divmod(const PrimeField & F, const FpPoly & a, const FpPoly & b);
FpPoly rem(const PrimeField & F, const FpPoly & a, const FpPoly & b);
/* Exact division; throws domain_error if the remainder is nonzero. */
FpPoly div_exact(const PrimeField & F, const FpPoly & a, const FpPoly & b);

FpPoly monic(const PrimeField & F, const FpPoly & a);
FpPoly derivative(const PrimeField & F, const FpPoly & a);
BigInt eval(const PrimeField & F, const FpPoly & a, const BigInt & x);

/* Monic gcd; gcd(0, 0) throws. */
FpPoly gcd(const PrimeField & F, const FpPoly & a, const FpPoly & b);

struct Xgcd {
    FpPoly g, s, t; /* g = s*a + t*b, g monic (or zero) */
};
Xgcd xgcd(const PrimeField & F, const FpPoly & a, const FpPoly & b);

FpPoly mulmod(const PrimeField & F, const FpPoly & a, const FpPoly & b, const FpPoly & m);
FpPoly powmod(const PrimeField & F, const FpPoly & a, const BigInt & e, const FpPoly & m);
/* g(h(x)) mod m */
FpPoly compose_mod(const PrimeField & F, const FpPoly & g, const FpPoly & h, const FpPoly & m);
/* Inverse of a modulo m; throws domain_error if not coprime. */
FpPoly invmod(const PrimeField & F, const FpPoly & a, const FpPoly & m);

bool is_squarefree(const PrimeField & F, const FpPoly & f);
bool is_irreducible(const PrimeField & F, const FpPoly & f);

/*
 * Monic irreducible factors of a squarefree polynomial, in canonical order
 * (by degree, then by coefficients from the top down).
 */
std::vector<FpPoly> factor_squarefree(const PrimeField & F, const FpPoly & f);

/* Canonical total order used for factors and square-root choices. */
bool canonical_less(const PrimeField & F, const FpPoly & a, const FpPoly & b);
/* Fixed-width big-endian bytes of the coefficients of a (deg < n), top down. */
Bytes encode_residue(const PrimeField & F, const FpPoly & a, std::size_t n);

/*
 * Square root in the residue field F_p[x]/(m), m monic irreducible. Returns
 * the canonical root (lexicographically smaller byte encoding of {r, -r}).
 */
std::optional<FpPoly> sqrt_in_residue_field(const PrimeField & F, const FpPoly & a,
                                            const FpPoly & m);

/*
 * v with deg v < deg u and v^2 = f (mod u), for monic squarefree u with
 * deg u <= 3. Bit i of `signs` flips the root chosen for the i-th canonical
 * factor of u. Returns nullopt if some factor has no root.
 */
std::optional<FpPoly> sqrt_mod(const PrimeField & F, const FpPoly & f, const FpPoly & u,
                               unsigned signs = 0);

/* Polynomial with coefficients drawn from the field stream; monic when requested. */
FpPoly random_poly(const PrimeField & F, ByteStream & stream, int degree, bool make_monic);

} // namespace poly
} // namespace uog
