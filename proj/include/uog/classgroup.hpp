#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uog/numtheory.hpp"

namespace uog::classgroup {

/* Negative discriminant, congruent to 0 or 1 mod 4. */
class Discriminant {
  public:
    explicit Discriminant(BigInt value);

    const BigInt & value() const { return d_; }
    /* Delta = 1 mod 4 with |Delta| prime: the setting used for trustless groups. */
    bool is_prime_discriminant() const;
    bool operator==(const Discriminant & o) const { return d_ == o.d_; }

  private:
    BigInt d_;
};

/*
 * Positive definite binary quadratic form ax^2 + bxy + cy^2. Reduced forms
 * satisfy |b| <= a <= c, and b >= 0 when |b| = a or a = c.
 */
struct QuadForm {
    BigInt a, b, c;

    BigInt discriminant() const { return b * b - 4 * a * c; }
    bool operator==(const QuadForm & o) const { return a == o.a && b == o.b && c == o.c; }
};

bool is_reduced(const QuadForm & f);

QuadForm identity(const Discriminant & d);
/* Unique reduced form equivalent to f. Throws domain_error unless a > 0 and Delta < 0. */
QuadForm reduce(QuadForm f);
/* Gauss composition followed by reduction. Throws domain_error on discriminant mismatch. */
QuadForm compose(const QuadForm & x, const QuadForm & y);
QuadForm square(const QuadForm & x);
QuadForm invert(const QuadForm & f);
/* Left-to-right binary exponentiation; n < 0 goes through invert. */
QuadForm pow(const QuadForm & f, const BigInt & n);

/*
 * Deterministic prime-form sampling: odd primes a drawn from the byte stream
 * with (Delta/a) = 1, b the square root of Delta mod 4a of minimal absolute
 * value with the right parity, then reduced.
 */
QuadForm sample_element(const Discriminant & d, std::span<const std::uint8_t> seed);

/* All reduced primitive forms of discriminant d; |d| <= 10^7. */
std::vector<QuadForm> enumerate_class_group(const Discriminant & d);

/* "qf1:" hex(|Delta|) ":" hex(a) ":" sign hex(b) */
std::string to_string(const QuadForm & f);
/* Parses and validates (c recomputed, form reduced and primitive). */
QuadForm parse(std::string_view s);
/* As parse, additionally requiring the given discriminant. */
QuadForm parse(std::string_view s, const Discriminant & d);

/* Form from (a, b) with c recomputed; throws corrupt_encoding if 4a does not divide b^2 - Delta. */
QuadForm from_ab(const BigInt & a, const BigInt & b, const Discriminant & d);

} // namespace uog::classgroup
