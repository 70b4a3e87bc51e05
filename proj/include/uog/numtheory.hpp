#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace uog {

using BigInt = mpz_class;
using Bytes = std::vector<std::uint8_t>;

/* ---- integer helpers ---------------------------------------------------- */

struct SqrtResult {
    BigInt root;
    bool exact;
};

/* floor(sqrt(n)) plus whether n is a perfect square. Throws on n < 0. */
SqrtResult int_sqrt(const BigInt & n);

/* Unique x in [0, lcm(m1,m2)) with x = r1 mod m1 and x = r2 mod m2. */
BigInt crt_pair(const BigInt & r1, const BigInt & m1, const BigInt & r2, const BigInt & m2);

/* lcm(1, 2, ..., n) */
BigInt lcm_range(unsigned long n);

/* Least nonnegative residue. */
BigInt mod(const BigInt & a, const BigInt & m);
BigInt floor_div(const BigInt & a, const BigInt & b);
BigInt mod_pow(const BigInt & base, const BigInt & exp, const BigInt & m);
/* Throws domain_error when gcd(a, m) != 1. */
BigInt mod_inverse(const BigInt & a, const BigInt & m);

struct XgcdResult {
    BigInt g, x, y; /* g = x*a + y*b, g >= 0 */
};
XgcdResult xgcd(const BigInt & a, const BigInt & b);

int jacobi(const BigInt & a, const BigInt & n);

/* Miller-Rabin backed probable-prime test; error <= 2^-128 for random input. */
bool is_probable_prime(const BigInt & n);

/* Square root modulo an odd prime (Tonelli-Shanks); nullopt for non-residues. */
std::optional<BigInt> sqrt_mod_prime(const BigInt & a, const BigInt & p);

std::size_t bit_length(const BigInt & n);
/* log2 |n| as a double (n != 0). */
double log2_abs(const BigInt & n);

/* Primes <= n by sieve. */
std::vector<unsigned long> primes_up_to(unsigned long n);

/* ---- byte / hex helpers ------------------------------------------------- */

/* Big-endian magnitude; width 0 means minimal (zero encodes as no bytes). */
Bytes to_bytes_be(const BigInt & n, std::size_t width = 0);
BigInt from_bytes_be(std::span<const std::uint8_t> bytes);

std::string to_hex(std::span<const std::uint8_t> bytes);
Bytes from_hex(std::string_view hex);
/* Lowercase hex of |n| with a leading '-' for negatives; "0" for zero. */
std::string int_to_hex(const BigInt & n);
/* Inverse of int_to_hex; rejects non-canonical input (uppercase, leading zeros). */
BigInt int_from_hex(std::string_view s);

Bytes bytes_of(std::string_view s);
Bytes concat(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

Bytes sha256(std::span<const std::uint8_t> data);

/* ---- deterministic byte expansion -------------------------------------- */

/*
 * Counter-mode SHA-256 stream: block i = SHA256(seed || be64(i)).
 * Every read consumes bytes in order; the offset is exposed so transcripts
 * can point at the exact stream position of each draw.
 */
class ByteStream {
  public:
    explicit ByteStream(Bytes seed);

    Bytes read(std::size_t n);
    std::uint8_t read_byte();
    /* Reads ceil((bitlen(p) + 64) / 8) bytes big-endian and reduces mod p. */
    BigInt field_element(const BigInt & p);
    /* Reads ceil(bits / 8) bytes, keeps the low `bits` bits. */
    BigInt uniform_bits(std::size_t bits);

    std::uint64_t offset() const { return offset_; }

  private:
    void refill();

    Bytes seed_;
    std::uint64_t counter_ = 0;
    Bytes block_;
    std::size_t pos_ = 0;
    std::uint64_t offset_ = 0;
};

/* Observer for hash-to-prime draws: candidate bytes and verdict. */
using DrawObserver = std::function<void(std::uint64_t offset, const Bytes & raw, bool accepted,
                                        std::string_view reason)>;
using CandidateFilter = std::function<bool(const BigInt &)>;

/*
 * Draws `bits`-bit candidates from the stream (top bit forced), returns the
 * first one that passes `filter` (if any) and is a probable prime.
 */
BigInt hash_to_prime(ByteStream & stream, std::size_t bits, const CandidateFilter & filter = {},
                     const DrawObserver & observer = {});
BigInt hash_to_prime(std::span<const std::uint8_t> seed, std::size_t bits,
                     const CandidateFilter & filter = {}, const DrawObserver & observer = {});

/* ---- prime field -------------------------------------------------------- */

class PrimeField {
  public:
    /* Throws domain_error unless p is an odd probable prime. */
    explicit PrimeField(BigInt p);

    const BigInt & modulus() const { return p_; }
    /* ceil(bitlen(p) / 8): fixed width of an encoded element. */
    std::size_t element_bytes() const { return width_; }

    BigInt reduce(const BigInt & a) const { return mod(a, p_); }
    BigInt add(const BigInt & a, const BigInt & b) const;
    BigInt sub(const BigInt & a, const BigInt & b) const;
    BigInt mul(const BigInt & a, const BigInt & b) const;
    BigInt neg(const BigInt & a) const;
    BigInt inv(const BigInt & a) const;
    BigInt pow(const BigInt & a, const BigInt & e) const { return mod_pow(a, e, p_); }
    bool is_square(const BigInt & a) const;
    std::optional<BigInt> sqrt(const BigInt & a) const { return sqrt_mod_prime(reduce(a), p_); }

    Bytes encode(const BigInt & a) const { return to_bytes_be(a, width_); }
    bool operator==(const PrimeField & o) const { return p_ == o.p_; }

  private:
    BigInt p_;
    std::size_t width_;
};

} // namespace uog
