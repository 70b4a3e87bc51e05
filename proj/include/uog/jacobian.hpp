#pragma once

#include <span>

#include "uog/poly.hpp"

namespace uog::jacobian {

/* y^2 = f(x) with f monic, squarefree, degree 7 (genus 3). */
class HyperCurve {
  public:
    /* Throws domain_error if f is not monic squarefree of degree 7. */
    HyperCurve(PrimeField field, FpPoly f);

    const PrimeField & field() const { return field_; }
    const FpPoly & f() const { return f_; }
    bool operator==(const HyperCurve & o) const { return field_ == o.field_ && f_ == o.f_; }

  private:
    PrimeField field_;
    FpPoly f_;
};

/* Mumford pair <u, v>: u monic, deg v < deg u <= 3, v^2 = f (mod u). */
struct MumfordDivisor {
    FpPoly u = FpPoly::constant(1);
    FpPoly v;

    bool is_identity() const { return u.degree() == 0; }
    bool operator==(const MumfordDivisor & o) const { return u == o.u && v == o.v; }
};

MumfordDivisor identity();
bool validate(const HyperCurve & curve, const MumfordDivisor & d);

/* Cantor composition and reduction. All throw domain_error on invalid input. */
MumfordDivisor add(const HyperCurve & curve, const MumfordDivisor & a, const MumfordDivisor & b);
MumfordDivisor doubling(const HyperCurve & curve, const MumfordDivisor & a);
MumfordDivisor negate(const HyperCurve & curve, const MumfordDivisor & a);
MumfordDivisor scalar_mul(const HyperCurve & curve, const BigInt & n, const MumfordDivisor & a);

/*
 * Per attempt: a monic cubic u (three field draws), then one byte whose low
 * three bits pick the square-root signs. Retries on non-squarefree u or a
 * factor without a root.
 */
MumfordDivisor sample_divisor(const HyperCurve & curve, std::span<const std::uint8_t> seed);

/* Largest p accepted by order_oracle. */
inline constexpr unsigned long order_oracle_max_p = 1ul << 13;

/*
 * #J(F_p) from point counts over F_p, F_p^2, F_p^3. Degree-2 and degree-3
 * points are counted per closed point (irreducible quadratic / cubic m) via
 * the quadratic character of Res(m, f). Cost is about p^3 / 3 cubic norms;
 * throws resource_error above order_oracle_max_p.
 */
BigInt order_oracle(const HyperCurve & curve);

/* The L-polynomial coefficients behind order_oracle: (e1, e2, e3). */
struct ZetaData {
    long long n1, n2, n3; /* point counts incl. the point at infinity */
    long long e1, e2, e3;
};
ZetaData zeta_data(const HyperCurve & curve);

/*
 * Compact encoding. Tag byte:
 *   0x00              identity, nothing follows
 *   0x30 | signs      deg u = 3 squarefree: u0 u1 u2, v recomputed from sqrt_mod
 *   0x10 | deg        explicit: u0..u_{d-1} v0..v_{d-1} (deg u < 3 or u not squarefree)
 * Field elements are fixed width element_bytes().
 */
Bytes compress_divisor(const HyperCurve & curve, const MumfordDivisor & d);
MumfordDivisor decompress_divisor(const HyperCurve & curve, std::span<const std::uint8_t> bytes);

/* "jd1:" deg-byte u0..u_{d-1} v0..v_{d-1}, fixed width; monic leading u coefficient omitted. */
Bytes serialize(const HyperCurve & curve, const MumfordDivisor & d);
/* Throws corrupt_encoding on malformed bytes or an invalid divisor. */
MumfordDivisor deserialize(const HyperCurve & curve, std::span<const std::uint8_t> bytes);

} // namespace uog::jacobian
