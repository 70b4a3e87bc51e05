#include "uog/numtheory.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <openssl/evp.h>

#include "uog/errors.hpp"

namespace uog {

SqrtResult int_sqrt(const BigInt & n)
{
    if (n < 0)
        throw domain_error("int_sqrt: negative input");
    SqrtResult r;
    BigInt rem;
    mpz_sqrtrem(r.root.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
    r.exact = (rem == 0);
    return r;
}

BigInt mod(const BigInt & a, const BigInt & m)
{
    BigInt r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

BigInt floor_div(const BigInt & a, const BigInt & b)
{
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

BigInt mod_pow(const BigInt & base, const BigInt & exp, const BigInt & m)
{
    if (exp < 0)
        return mod_pow(mod_inverse(base, m), -exp, m);
    BigInt r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
    return r;
}

BigInt mod_inverse(const BigInt & a, const BigInt & m)
{
    BigInt r;
    if (m == 1)
        return 0;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw domain_error("mod_inverse: not invertible");
    return r;
}

XgcdResult xgcd(const BigInt & a, const BigInt & b)
{
    XgcdResult r;
    mpz_gcdext(r.g.get_mpz_t(), r.x.get_mpz_t(), r.y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

BigInt crt_pair(const BigInt & r1, const BigInt & m1, const BigInt & r2, const BigInt & m2)
{
    if (m1 < 1 || m2 < 1)
        throw domain_error("crt_pair: moduli must be positive");
    XgcdResult e = xgcd(m1, m2);
    BigInt diff = r2 - r1;
    if (mod(diff, e.g) != 0)
        throw domain_error("crt_pair: incompatible residues");
    BigInt l = m1 / e.g * m2;
    /* x = r1 + m1 * k with m1 * k = r2 - r1 (mod m2) */
    BigInt m2g = m2 / e.g;
    BigInt k = mod(BigInt(diff / e.g) * e.x, m2g);
    return mod(r1 + m1 * k, l);
}

BigInt lcm_range(unsigned long n)
{
    BigInt r = 1;
    for (unsigned long p : primes_up_to(n)) {
        unsigned long q = p;
        while (q <= n / p)
            q *= p;
        r *= q;
    }
    return r;
}

int jacobi(const BigInt & a, const BigInt & n)
{
    return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t());
}

bool is_probable_prime(const BigInt & n)
{
    if (n < 2)
        return false;
    /* GMP runs BPSW followed by reps-24 Miller-Rabin rounds; deterministic below 2^64. */
    return mpz_probab_prime_p(n.get_mpz_t(), 64) != 0;
}

std::optional<BigInt> sqrt_mod_prime(const BigInt & a_in, const BigInt & p)
{
    BigInt a = mod(a_in, p);
    if (a == 0)
        return BigInt(0);
    if (p == 2)
        return a;
    if (jacobi(a, p) != 1)
        return std::nullopt;
    if (mod(p, 4) == 3)
        return mod_pow(a, (p + 1) / 4, p);

    BigInt q = p - 1;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++s;
    }
    BigInt z = 2;
    while (jacobi(z, p) != -1)
        ++z;
    BigInt c = mod_pow(z, q, p);
    BigInt x = mod_pow(a, (q + 1) / 2, p);
    BigInt t = mod_pow(a, q, p);
    unsigned long m = s;
    while (t != 1) {
        unsigned long i = 0;
        BigInt t2 = t;
        while (t2 != 1) {
            t2 = t2 * t2 % p;
            ++i;
        }
        BigInt b = c;
        for (unsigned long j = 0; j + i + 1 < m; ++j)
            b = b * b % p;
        x = x * b % p;
        c = b * b % p;
        t = t * c % p;
        m = i;
    }
    return x;
}

std::size_t bit_length(const BigInt & n)
{
    if (n == 0)
        return 0;
    return mpz_sizeinbase(n.get_mpz_t(), 2);
}

double log2_abs(const BigInt & n)
{
    long exp = 0;
    double m = mpz_get_d_2exp(&exp, n.get_mpz_t());
    return std::log2(std::fabs(m)) + static_cast<double>(exp);
}

std::vector<unsigned long> primes_up_to(unsigned long n)
{
    std::vector<unsigned long> out;
    if (n < 2)
        return out;
    std::vector<bool> composite(n + 1, false);
    for (unsigned long i = 2; i <= n; ++i) {
        if (composite[i])
            continue;
        out.push_back(i);
        for (unsigned long j = i * i; j <= n; j += i)
            composite[j] = true;
    }
    return out;
}

Bytes to_bytes_be(const BigInt & n, std::size_t width)
{
    BigInt m = abs(n);
    std::size_t len = (bit_length(m) + 7) / 8;
    if (width != 0 && len > width)
        throw domain_error("to_bytes_be: value does not fit width");
    std::size_t out_len = width ? width : len;
    Bytes out(out_len, 0);
    if (len) {
        std::size_t count = 0;
        mpz_export(out.data() + (out_len - len), &count, 1, 1, 1, 0, m.get_mpz_t());
    }
    return out;
}

BigInt from_bytes_be(std::span<const std::uint8_t> bytes)
{
    BigInt r;
    if (!bytes.empty())
        mpz_import(r.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
    return r;
}

std::string to_hex(std::span<const std::uint8_t> bytes)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string s;
    s.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 15]);
    }
    return s;
}

namespace {
int hex_digit(char c)
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    return -1;
}
} // namespace

Bytes from_hex(std::string_view hex)
{
    if (hex.size() % 2)
        throw corrupt_encoding("hex string of odd length");
    Bytes out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        int hi = hex_digit(hex[2 * i]), lo = hex_digit(hex[2 * i + 1]);
        if (hi < 0 || lo < 0)
            throw corrupt_encoding("invalid hex digit");
        out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
    }
    return out;
}

std::string int_to_hex(const BigInt & n)
{
    std::string s = BigInt(abs(n)).get_str(16);
    return n < 0 ? "-" + s : s;
}

BigInt int_from_hex(std::string_view s)
{
    bool neg = false;
    if (!s.empty() && s.front() == '-') {
        neg = true;
        s.remove_prefix(1);
    }
    if (s.empty())
        throw corrupt_encoding("empty hex integer");
    if (s.size() > 1 && s.front() == '0')
        throw corrupt_encoding("non-canonical hex integer");
    for (char c : s)
        if (hex_digit(c) < 0)
            throw corrupt_encoding("invalid hex digit");
    BigInt r(std::string(s), 16);
    if (neg && r == 0)
        throw corrupt_encoding("negative zero");
    return neg ? BigInt(-r) : r;
}

Bytes bytes_of(std::string_view s)
{
    return Bytes(s.begin(), s.end());
}

Bytes concat(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b)
{
    Bytes r(a.begin(), a.end());
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

Bytes sha256(std::span<const std::uint8_t> data)
{
    Bytes out(32);
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr);
    return out;
}

ByteStream::ByteStream(Bytes seed) : seed_(std::move(seed)) {}

void ByteStream::refill()
{
    Bytes input = seed_;
    for (int i = 7; i >= 0; --i)
        input.push_back(static_cast<std::uint8_t>(counter_ >> (8 * i)));
    ++counter_;
    block_ = sha256(input);
    pos_ = 0;
}

Bytes ByteStream::read(std::size_t n)
{
    Bytes out;
    out.reserve(n);
    while (out.size() < n) {
        if (pos_ == block_.size())
            refill();
        std::size_t take = std::min(n - out.size(), block_.size() - pos_);
        out.insert(out.end(), block_.begin() + pos_, block_.begin() + pos_ + take);
        pos_ += take;
    }
    offset_ += n;
    return out;
}

std::uint8_t ByteStream::read_byte()
{
    return read(1)[0];
}

BigInt ByteStream::field_element(const BigInt & p)
{
    std::size_t n = (bit_length(p) + 64 + 7) / 8;
    return mod(from_bytes_be(read(n)), p);
}

BigInt ByteStream::uniform_bits(std::size_t bits)
{
    BigInt v = from_bytes_be(read((bits + 7) / 8));
    mpz_fdiv_r_2exp(v.get_mpz_t(), v.get_mpz_t(), bits);
    return v;
}

BigInt hash_to_prime(ByteStream & stream, std::size_t bits, const CandidateFilter & filter,
                     const DrawObserver & observer)
{
    if (bits < 2)
        throw domain_error("hash_to_prime: need at least 2 bits");
    for (;;) {
        std::uint64_t at = stream.offset();
        Bytes raw = stream.read((bits + 7) / 8);
        BigInt c = from_bytes_be(raw);
        mpz_fdiv_r_2exp(c.get_mpz_t(), c.get_mpz_t(), bits);
        mpz_setbit(c.get_mpz_t(), bits - 1);
        if (filter && !filter(c)) {
            if (observer)
                observer(at, raw, false, "filter");
            continue;
        }
        if (!is_probable_prime(c)) {
            if (observer)
                observer(at, raw, false, "composite");
            continue;
        }
        if (observer)
            observer(at, raw, true, "prime");
        return c;
    }
}

BigInt hash_to_prime(std::span<const std::uint8_t> seed, std::size_t bits,
                     const CandidateFilter & filter, const DrawObserver & observer)
{
    ByteStream stream(Bytes(seed.begin(), seed.end()));
    return hash_to_prime(stream, bits, filter, observer);
}

PrimeField::PrimeField(BigInt p) : p_(std::move(p))
{
    if (p_ < 3 || mpz_even_p(p_.get_mpz_t()) || !is_probable_prime(p_))
        throw domain_error("PrimeField: modulus must be an odd prime");
    width_ = (bit_length(p_) + 7) / 8;
}

BigInt PrimeField::add(const BigInt & a, const BigInt & b) const
{
    BigInt r = a + b;
    if (r >= p_)
        r -= p_;
    return r;
}

BigInt PrimeField::sub(const BigInt & a, const BigInt & b) const
{
    BigInt r = a - b;
    if (r < 0)
        r += p_;
    return r;
}

BigInt PrimeField::mul(const BigInt & a, const BigInt & b) const
{
    BigInt r = a * b;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), p_.get_mpz_t());
    return r;
}

BigInt PrimeField::neg(const BigInt & a) const
{
    return a == 0 ? BigInt(0) : BigInt(p_ - a);
}

BigInt PrimeField::inv(const BigInt & a) const
{
    if (a == 0)
        throw domain_error("PrimeField: inverse of zero");
    return mod_inverse(a, p_);
}

bool PrimeField::is_square(const BigInt & a) const
{
    return jacobi(reduce(a), p_) >= 0;
}

} // namespace uog
