#pragma once

#include <span>

#include "uog/classgroup.hpp"

namespace uog::formcodec {

/* Result of partial_xgcd: s = b*t (mod a), 0 <= s < sqrt(a), 0 < |t| <= sqrt(a). */
struct PartialXgcd {
    BigInt s, t;
    /* s' at loop exit; |s' * t| <= a holds throughout. */
    BigInt s_prev;
};

/*
 * Truncated extended Euclid on (a, b), stopping once s < sqrt(a).
 * Requires a > b > 0.
 */
PartialXgcd partial_xgcd(const BigInt & a, const BigInt & b);

/*
 * Compressed reduced form (a', g, t', b0, eps).
 *
 * Two sentinels: b = 0 encodes as (a, 0, 0, 0, 0) and a = b as (1, a, 0, 0, 0).
 * Otherwise a = g*a', t = g*t' where t comes from partial_xgcd(a, |b|), and
 * b0 = |b| mod f with f the least integer >= |g| such that lcm(f, a') >= a.
 */
struct CompressedForm {
    BigInt a_prime, g, t_prime, b0;
    bool negative = false;

    bool operator==(const CompressedForm & o) const
    {
        return a_prime == o.a_prime && g == o.g && t_prime == o.t_prime && b0 == o.b0 &&
               negative == o.negative;
    }
};

/* Smallest f >= |g| with lcm(f, a') >= a (linear scan). */
BigInt lcm_modulus(const BigInt & g, const BigInt & a_prime, const BigInt & a);

/* Throws domain_error for unreduced input. */
CompressedForm compress(const classgroup::QuadForm & form);

/*
 * Throws corrupt_encoding when the tuple does not describe a form of d. The
 * two sentinels decode literally (c = (b^2 - d) / 4a, possibly unreduced); the
 * general branch also rejects unreduced results and non-canonical tuples.
 */
classgroup::QuadForm decompress(const CompressedForm & cf, const classgroup::Discriminant & d);

/*
 * "cf1:" followed by varint-length-prefixed big-endian magnitudes of a', g,
 * t', b0 and one flag byte (bit0 = eps, bit1 = g < 0, bit2 = t' < 0).
 */
Bytes serialize(const CompressedForm & cf);
CompressedForm deserialize(std::span<const std::uint8_t> bytes);

/* Length in bits of the serialized payload, excluding the 4-byte "cf1:" tag. */
std::size_t payload_bits(const CompressedForm & cf);
/*
 * Sum of the field bit lengths plus the three flag bits: the size of the
 * tuple itself before any byte framing.
 */
std::size_t content_bits(const CompressedForm & cf);

} // namespace uog::formcodec
