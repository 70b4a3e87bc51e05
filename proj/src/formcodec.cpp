#include "uog/formcodec.hpp"

#include <algorithm>

#include "uog/errors.hpp"

namespace uog::formcodec {

using classgroup::Discriminant;
using classgroup::QuadForm;

PartialXgcd partial_xgcd(const BigInt & a, const BigInt & b)
{
    if (!(a > b && b > 0))
        throw domain_error("partial_xgcd: requires a > b > 0");
    BigInt s = b, s_prev = a;
    BigInt t = 1, t_prev = 0;
    BigInt q, tmp;
    /* s >= sqrt(a)  <=>  s^2 >= a for integers */
    while (s * s >= a) {
        mpz_fdiv_q(q.get_mpz_t(), s_prev.get_mpz_t(), s.get_mpz_t());
        tmp = s_prev - q * s;
        s_prev = std::move(s);
        s = std::move(tmp);
        tmp = t_prev - q * t;
        t_prev = std::move(t);
        t = std::move(tmp);
    }
    return {s, t, s_prev};
}

BigInt lcm_modulus(const BigInt & g, const BigInt & a_prime, const BigInt & a)
{
    BigInt f = abs(g);
    if (f == 0)
        f = 1;
    BigInt l;
    for (;;) {
        mpz_lcm(l.get_mpz_t(), f.get_mpz_t(), a_prime.get_mpz_t());
        if (l >= a)
            return f;
        ++f;
    }
}

CompressedForm compress(const QuadForm & form)
{
    if (!classgroup::is_reduced(form))
        throw domain_error("compress: form is not reduced");
    const BigInt & a = form.a;
    if (form.b == 0)
        return {a, 0, 0, 0, false};
    if (form.b == a)
        return {1, a, 0, 0, false};

    CompressedForm cf;
    cf.negative = form.b < 0;
    BigInt b = abs(form.b);
    PartialXgcd px = partial_xgcd(a, b);
    mpz_gcd(cf.g.get_mpz_t(), a.get_mpz_t(), px.t.get_mpz_t());
    cf.a_prime = a / cf.g;
    cf.t_prime = px.t / cf.g;
    BigInt f = lcm_modulus(cf.g, cf.a_prime, a);
    cf.b0 = mod(b, f);
    return cf;
}

namespace {

QuadForm checked_form(const BigInt & a, const BigInt & b, const Discriminant & d)
{
    QuadForm f = classgroup::from_ab(a, b, d);
    if (!classgroup::is_reduced(f))
        throw corrupt_encoding("decompress: result not reduced");
    return f;
}

} // namespace

QuadForm decompress(const CompressedForm & cf, const Discriminant & d)
{
    const BigInt & D = d.value();
    /* sentinels are decoded literally; reducedness is the caller's check */
    if (cf.g == 0 && cf.t_prime == 0 && cf.b0 == 0 && !cf.negative)
        return classgroup::from_ab(cf.a_prime, 0, d);
    if (cf.t_prime == 0) {
        if (cf.a_prime != 1 || cf.b0 != 0 || cf.negative)
            throw corrupt_encoding("decompress: malformed a = b sentinel");
        return classgroup::from_ab(cf.g, cf.g, d);
    }
    if (cf.a_prime <= 0 || cf.g <= 0)
        throw corrupt_encoding("decompress: a' and g must be positive");

    BigInt a = cf.g * cf.a_prime;
    BigInt t = cf.g * cf.t_prime;
    BigInt x = mod(t * t * D, a);
    SqrtResult sr = int_sqrt(x);
    if (!sr.exact)
        throw corrupt_encoding("decompress: t^2 Delta mod a is not a square");
    if (mod(sr.root, cf.g) != 0)
        throw corrupt_encoding("decompress: s not divisible by g");
    BigInt s_prime = sr.root / cf.g;
    BigInt t_inv;
    try {
        t_inv = mod_inverse(mod(cf.t_prime, cf.a_prime), cf.a_prime);
    } catch (const domain_error &) {
        throw corrupt_encoding("decompress: t' not invertible mod a'");
    }
    BigInt b_prime = mod(s_prime * t_inv, cf.a_prime);
    BigInt f = lcm_modulus(cf.g, cf.a_prime, a);
    if (cf.b0 < 0 || cf.b0 >= f)
        throw corrupt_encoding("decompress: b0 out of range");
    BigInt b;
    try {
        b = crt_pair(b_prime, cf.a_prime, cf.b0, f);
    } catch (const domain_error &) {
        throw corrupt_encoding("decompress: incompatible residues");
    }
    if (cf.negative)
        b = -b;
    QuadForm form = checked_form(a, b, d);
    if (!(compress(form) == cf))
        throw corrupt_encoding("decompress: non-canonical encoding");
    return form;
}

namespace {

void put_varint(Bytes & out, std::size_t v)
{
    while (v >= 0x80) {
        out.push_back(static_cast<std::uint8_t>(v | 0x80));
        v >>= 7;
    }
    out.push_back(static_cast<std::uint8_t>(v));
}

std::size_t get_varint(std::span<const std::uint8_t> & in)
{
    std::size_t v = 0;
    for (int shift = 0; shift < 63; shift += 7) {
        if (in.empty())
            throw corrupt_encoding("cf1: truncated length");
        std::uint8_t byte = in[0];
        in = in.subspan(1);
        v |= static_cast<std::size_t>(byte & 0x7f) << shift;
        if (!(byte & 0x80)) {
            if (byte == 0 && shift != 0)
                throw corrupt_encoding("cf1: non-minimal length");
            return v;
        }
    }
    throw corrupt_encoding("cf1: length overflow");
}

void put_field(Bytes & out, const BigInt & v)
{
    Bytes mag = to_bytes_be(v);
    put_varint(out, mag.size());
    out.insert(out.end(), mag.begin(), mag.end());
}

BigInt get_field(std::span<const std::uint8_t> & in)
{
    std::size_t n = get_varint(in);
    if (n > in.size())
        throw corrupt_encoding("cf1: truncated field");
    if (n > 0 && in[0] == 0)
        throw corrupt_encoding("cf1: leading zero byte");
    BigInt v = from_bytes_be(in.first(n));
    in = in.subspan(n);
    return v;
}

constexpr std::string_view cf_tag = "cf1:";

} // namespace

Bytes serialize(const CompressedForm & cf)
{
    Bytes out(cf_tag.begin(), cf_tag.end());
    put_field(out, cf.a_prime);
    put_field(out, cf.g);
    put_field(out, cf.t_prime);
    put_field(out, cf.b0);
    std::uint8_t flags = (cf.negative ? 1 : 0) | (cf.g < 0 ? 2 : 0) | (cf.t_prime < 0 ? 4 : 0);
    out.push_back(flags);
    return out;
}

CompressedForm deserialize(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < cf_tag.size() ||
        !std::equal(cf_tag.begin(), cf_tag.end(), bytes.begin()))
        throw corrupt_encoding("cf1: missing tag");
    std::span<const std::uint8_t> in = bytes.subspan(cf_tag.size());
    CompressedForm cf;
    cf.a_prime = get_field(in);
    cf.g = get_field(in);
    cf.t_prime = get_field(in);
    cf.b0 = get_field(in);
    if (in.size() != 1)
        throw corrupt_encoding("cf1: bad trailer");
    std::uint8_t flags = in[0];
    if (flags & ~0x7u)
        throw corrupt_encoding("cf1: unknown flag bits");
    if (((flags & 2) && cf.g == 0) || ((flags & 4) && cf.t_prime == 0))
        throw corrupt_encoding("cf1: sign on zero field");
    cf.negative = flags & 1;
    if (flags & 2)
        cf.g = -cf.g;
    if (flags & 4)
        cf.t_prime = -cf.t_prime;
    return cf;
}

std::size_t payload_bits(const CompressedForm & cf)
{
    return (serialize(cf).size() - cf_tag.size()) * 8;
}

std::size_t content_bits(const CompressedForm & cf)
{
    return bit_length(cf.a_prime) + bit_length(abs(cf.g)) + bit_length(abs(cf.t_prime)) +
           bit_length(cf.b0) + 3;
}

} // namespace uog::formcodec
