#include "uog/jacobian.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

#include "uog/errors.hpp"

namespace uog::jacobian {

HyperCurve::HyperCurve(PrimeField field, FpPoly f)
    : field_(std::move(field)), f_(poly::reduce(field_, f))
{
    if (f_.degree() != 7 || !f_.is_monic())
        throw domain_error("HyperCurve: f must be monic of degree 7");
    if (!poly::is_squarefree(field_, f_))
        throw domain_error("HyperCurve: f must be squarefree");
}

MumfordDivisor identity()
{
    return {};
}

bool validate(const HyperCurve & curve, const MumfordDivisor & d)
{
    const PrimeField & F = curve.field();
    if (!d.u.is_monic() || d.u.degree() > 3 || d.v.degree() >= d.u.degree())
        return false;
    for (const BigInt & c : d.u.coeffs())
        if (c < 0 || c >= F.modulus())
            return false;
    for (const BigInt & c : d.v.coeffs())
        if (c < 0 || c >= F.modulus())
            return false;
    FpPoly diff = poly::sub(F, poly::mul(F, d.v, d.v), curve.f());
    return poly::rem(F, diff, d.u).is_zero();
}

namespace {

void require_valid(const HyperCurve & curve, const MumfordDivisor & d)
{
    if (!validate(curve, d))
        throw domain_error("jacobian: invalid divisor");
}

MumfordDivisor reduce_divisor(const HyperCurve & curve, FpPoly u, FpPoly v)
{
    const PrimeField & F = curve.field();
    v = poly::rem(F, v, u);
    while (u.degree() > 3) {
        FpPoly num = poly::sub(F, curve.f(), poly::mul(F, v, v));
        u = poly::monic(F, poly::div_exact(F, num, u));
        v = poly::rem(F, poly::neg(F, v), u);
    }
    return {poly::monic(F, u), v};
}

MumfordDivisor compose(const HyperCurve & curve, const MumfordDivisor & a, const MumfordDivisor & b)
{
    const PrimeField & F = curve.field();
    /* d1 = e1 u1 + e2 u2, d = c1 d1 + c2 (v1 + v2) */
    poly::Xgcd g1 = poly::xgcd(F, a.u, b.u);
    poly::Xgcd g2 = poly::xgcd(F, g1.g, poly::add(F, a.v, b.v));
    const FpPoly & d = g2.g;
    FpPoly s1 = poly::mul(F, g2.s, g1.s);
    FpPoly s2 = poly::mul(F, g2.s, g1.t);
    const FpPoly & s3 = g2.t;

    FpPoly u = poly::mul(F, a.u, b.u);
    if (d.degree() > 0)
        u = poly::div_exact(F, u, poly::mul(F, d, d));
    FpPoly num = poly::add(F, poly::mul(F, poly::mul(F, s1, a.u), b.v), poly::mul(F, poly::mul(F, s2, b.u), a.v));
    num = poly::add(F, num, poly::mul(F, s3, poly::add(F, poly::mul(F, a.v, b.v), curve.f())));
    FpPoly v = d.degree() > 0 ? poly::div_exact(F, num, d) : num;
    return reduce_divisor(curve, std::move(u), std::move(v));
}

} // namespace

MumfordDivisor add(const HyperCurve & curve, const MumfordDivisor & a, const MumfordDivisor & b)
{
    require_valid(curve, a);
    require_valid(curve, b);
    if (a.is_identity())
        return b;
    if (b.is_identity())
        return a;
    return compose(curve, a, b);
}

MumfordDivisor doubling(const HyperCurve & curve, const MumfordDivisor & a)
{
    return add(curve, a, a);
}

MumfordDivisor negate(const HyperCurve & curve, const MumfordDivisor & a)
{
    require_valid(curve, a);
    return {a.u, poly::rem(curve.field(), poly::neg(curve.field(), a.v), a.u)};
}

MumfordDivisor scalar_mul(const HyperCurve & curve, const BigInt & n, const MumfordDivisor & a)
{
    require_valid(curve, a);
    if (n < 0)
        return scalar_mul(curve, -n, negate(curve, a));
    MumfordDivisor r;
    for (std::size_t i = bit_length(n); i-- > 0;) {
        if (!r.is_identity())
            r = compose(curve, r, r);
        if (mpz_tstbit(n.get_mpz_t(), i))
            r = r.is_identity() ? a : compose(curve, r, a);
    }
    return r;
}

MumfordDivisor sample_divisor(const HyperCurve & curve, std::span<const std::uint8_t> seed)
{
    const PrimeField & F = curve.field();
    ByteStream stream(Bytes(seed.begin(), seed.end()));
    for (;;) {
        FpPoly u = poly::random_poly(F, stream, 3, true);
        unsigned signs = stream.read_byte() & 7u;
        if (!poly::is_squarefree(F, u))
            continue;
        auto v = poly::sqrt_mod(F, curve.f(), u, signs);
        if (v)
            return {u, *v};
    }
}

/* ---- zeta oracle -------------------------------------------------------- */

namespace {

using u64 = std::uint64_t;

struct SmallField {
    u64 p;
    std::vector<int> chi;

    explicit SmallField(u64 p_) : p(p_), chi(p_, -1)
    {
        chi[0] = 0;
        for (u64 x = 1; x < p; ++x)
            chi[x * x % p] = 1;
    }
    u64 mul(u64 a, u64 b) const { return a * b % p; }
    u64 add(u64 a, u64 b) const { return (a + b) % p; }
    u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
};

/* f mod (x^2 + a x + b), then its norm r0^2 - a r0 r1 + b r1^2 */
u64 quad_norm(const SmallField & K, const u64 * fc, u64 a, u64 b)
{
    u64 r0 = 0, r1 = 0;
    for (int i = 7; i >= 0; --i) {
        u64 n1 = K.sub(r0, K.mul(a, r1));
        u64 n0 = K.sub(fc[i], K.mul(b, r1));
        r1 = n1;
        r0 = n0;
    }
    u64 n = K.mul(r0, r0);
    n = K.sub(n, K.mul(a, K.mul(r0, r1)));
    return K.add(n, K.mul(b, K.mul(r1, r1)));
}

/* multiply g (deg <= 2) by x modulo x^3 + a x^2 + b x + c */
void times_x(const SmallField & K, u64 g[3], u64 a, u64 b, u64 c)
{
    u64 t = g[2];
    g[2] = K.sub(g[1], K.mul(a, t));
    g[1] = K.sub(g[0], K.mul(b, t));
    g[0] = K.sub(0, K.mul(c, t));
}

/* norm from F_p[x]/(m) of f mod m: determinant of multiplication by g */
u64 cubic_norm(const SmallField & K, const u64 * fc, u64 a, u64 b, u64 c)
{
    u64 g[3] = {0, 0, 0};
    for (int i = 7; i >= 0; --i) {
        times_x(K, g, a, b, c);
        g[0] = K.add(g[0], fc[i]);
    }
    u64 m[3][3];
    u64 col[3] = {g[0], g[1], g[2]};
    for (int j = 0; j < 3; ++j) {
        for (int i = 0; i < 3; ++i)
            m[i][j] = col[i];
        times_x(K, col, a, b, c);
    }
    u64 d = K.mul(m[0][0], K.sub(K.mul(m[1][1], m[2][2]), K.mul(m[1][2], m[2][1])));
    d = K.sub(d, K.mul(m[0][1], K.sub(K.mul(m[1][0], m[2][2]), K.mul(m[1][2], m[2][0]))));
    return K.add(d, K.mul(m[0][2], K.sub(K.mul(m[1][0], m[2][1]), K.mul(m[1][1], m[2][0]))));
}

} // namespace

ZetaData zeta_data(const HyperCurve & curve)
{
    const BigInt & P = curve.field().modulus();
    if (P > order_oracle_max_p)
        throw resource_error("order_oracle: p above 2^13");
    const u64 p = P.get_ui();
    SmallField K(p);
    u64 fc[8];
    for (int i = 0; i < 8; ++i)
        fc[i] = curve.f().coeff(i).get_ui();

    /* A_k = sum over x in F_{p^k} of the quadratic character of f(x) */
    long long A1 = 0, A2 = 0, A3 = 0;
    for (u64 x = 0; x < p; ++x) {
        u64 y = 0;
        for (int i = 7; i >= 0; --i)
            y = K.add(K.mul(y, x), fc[i]);
        A1 += K.chi[y];
        A2 += (y != 0);
    }
    A3 = A1;

    for (u64 a = 0; a < p; ++a) {
        u64 a2 = K.mul(a, a);
        for (u64 b = 0; b < p; ++b) {
            if (K.chi[K.sub(a2, K.mul(4, b))] != -1)
                continue;
            A2 += 2 * K.chi[quad_norm(K, fc, a, b)];
        }
    }

    std::vector<std::uint8_t> reducible(p * p);
    for (u64 a = 0; a < p; ++a) {
        std::fill(reducible.begin(), reducible.end(), 0);
        /* (x + r)(x^2 + s x + t) with r + s = a */
        for (u64 r = 0; r < p; ++r) {
            u64 s = K.sub(a, r);
            u64 rs = K.mul(r, s);
            for (u64 t = 0; t < p; ++t)
                reducible[K.add(t, rs) * p + K.mul(r, t)] = 1;
        }
        for (u64 b = 0; b < p; ++b)
            for (u64 c = 0; c < p; ++c)
                if (!reducible[b * p + c])
                    A3 += 3 * K.chi[cubic_norm(K, fc, a, b, c)];
    }

    long long q = static_cast<long long>(p);
    ZetaData z;
    z.n1 = 1 + q + A1;
    z.n2 = 1 + q * q + A2;
    z.n3 = 1 + q * q * q + A3;
    long long S1 = -A1, S2 = -A2, S3 = -A3;
    z.e1 = S1;
    z.e2 = (z.e1 * S1 - S2) / 2;
    z.e3 = (z.e2 * S1 - z.e1 * S2 + S3) / 3;
    return z;
}

BigInt order_oracle(const HyperCurve & curve)
{
    ZetaData z = zeta_data(curve);
    BigInt p = curve.field().modulus();
    BigInt e1 = static_cast<long>(z.e1), e2 = static_cast<long>(z.e2),
           e3 = static_cast<long>(z.e3);
    return 1 - e1 + e2 - e3 + p * e2 - p * p * e1 + p * p * p;
}

/* ---- encodings ---------------------------------------------------------- */

namespace {

void put_coeffs(const PrimeField & F, Bytes & out, const FpPoly & a, int n)
{
    for (int i = 0; i < n; ++i) {
        Bytes c = F.encode(a.coeff(static_cast<std::size_t>(i)));
        out.insert(out.end(), c.begin(), c.end());
    }
}

FpPoly get_coeffs(const PrimeField & F, std::span<const std::uint8_t> & in, int n, bool monic)
{
    std::size_t w = F.element_bytes();
    std::vector<BigInt> c;
    for (int i = 0; i < n; ++i) {
        if (in.size() < w)
            throw corrupt_encoding("divisor: truncated field element");
        BigInt x = from_bytes_be(in.first(w));
        if (x >= F.modulus())
            throw corrupt_encoding("divisor: field element out of range");
        c.push_back(x);
        in = in.subspan(w);
    }
    if (monic)
        c.push_back(1);
    return FpPoly(std::move(c));
}

/* sign bit i set iff v mod factor_i is the non-canonical root */
unsigned sign_bits(const HyperCurve & curve, const MumfordDivisor & d)
{
    const PrimeField & F = curve.field();
    std::vector<FpPoly> factors = poly::factor_squarefree(F, d.u);
    unsigned bits = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        auto root = poly::sqrt_in_residue_field(F, curve.f(), factors[i]);
        if (!(poly::rem(F, d.v, factors[i]) == *root))
            bits |= 1u << i;
    }
    return bits;
}

} // namespace

Bytes compress_divisor(const HyperCurve & curve, const MumfordDivisor & d)
{
    require_valid(curve, d);
    const PrimeField & F = curve.field();
    if (d.is_identity())
        return Bytes{0x00};
    Bytes out;
    if (d.u.degree() == 3 && poly::is_squarefree(F, d.u)) {
        out.push_back(static_cast<std::uint8_t>(0x30 | sign_bits(curve, d)));
        put_coeffs(F, out, d.u, 3);
        return out;
    }
    out.push_back(static_cast<std::uint8_t>(0x10 | d.u.degree()));
    put_coeffs(F, out, d.u, d.u.degree());
    put_coeffs(F, out, d.v, d.u.degree());
    return out;
}

MumfordDivisor decompress_divisor(const HyperCurve & curve, std::span<const std::uint8_t> bytes)
{
    const PrimeField & F = curve.field();
    if (bytes.empty())
        throw corrupt_encoding("divisor: empty encoding");
    std::uint8_t tag = bytes[0];
    std::span<const std::uint8_t> in = bytes.subspan(1);
    MumfordDivisor d;
    if (tag == 0x00) {
        if (!in.empty())
            throw corrupt_encoding("divisor: trailing bytes after identity");
        return d;
    }
    if ((tag & 0xf0) == 0x30) {
        if (tag & 0x08)
            throw corrupt_encoding("divisor: unknown sign bits");
        d.u = get_coeffs(F, in, 3, true);
        if (!in.empty())
            throw corrupt_encoding("divisor: trailing bytes");
        if (!poly::is_squarefree(F, d.u))
            throw corrupt_encoding("divisor: compressed u not squarefree");
        std::vector<FpPoly> factors = poly::factor_squarefree(F, d.u);
        unsigned signs = tag & 7u;
        if (signs >> factors.size())
            throw corrupt_encoding("divisor: sign bit for a missing factor");
        auto v = poly::sqrt_mod(F, curve.f(), d.u, signs);
        if (!v)
            throw corrupt_encoding("divisor: f has no square root modulo u");
        for (std::size_t i = 0; i < factors.size(); ++i)
            if (((signs >> i) & 1u) && poly::rem(F, *v, factors[i]).is_zero())
                throw corrupt_encoding("divisor: sign bit set for a zero root");
        d.v = *v;
        return d;
    }
    if ((tag & 0xf0) == 0x10) {
        int deg = tag & 0x0f;
        if (deg < 1 || deg > 3)
            throw corrupt_encoding("divisor: bad explicit degree");
        d.u = get_coeffs(F, in, deg, true);
        d.v = get_coeffs(F, in, deg, false);
        if (!in.empty())
            throw corrupt_encoding("divisor: trailing bytes");
        if (!validate(curve, d))
            throw corrupt_encoding("divisor: v^2 != f mod u");
        if (deg == 3 && poly::is_squarefree(F, d.u))
            throw corrupt_encoding("divisor: explicit form used for a compressible divisor");
        return d;
    }
    throw corrupt_encoding("divisor: unknown tag");
}

namespace {
constexpr std::string_view jd_tag = "jd1:";
}

Bytes serialize(const HyperCurve & curve, const MumfordDivisor & d)
{
    require_valid(curve, d);
    Bytes out(jd_tag.begin(), jd_tag.end());
    int deg = d.u.degree();
    out.push_back(static_cast<std::uint8_t>(deg));
    put_coeffs(curve.field(), out, d.u, deg);
    put_coeffs(curve.field(), out, d.v, deg);
    return out;
}

MumfordDivisor deserialize(const HyperCurve & curve, std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < jd_tag.size() + 1 ||
        !std::equal(jd_tag.begin(), jd_tag.end(), bytes.begin()))
        throw corrupt_encoding("jd1: missing tag");
    int deg = bytes[jd_tag.size()];
    if (deg > 3)
        throw corrupt_encoding("jd1: degree above 3");
    std::span<const std::uint8_t> in = bytes.subspan(jd_tag.size() + 1);
    MumfordDivisor d;
    d.u = get_coeffs(curve.field(), in, deg, true);
    d.v = get_coeffs(curve.field(), in, deg, false);
    if (!in.empty())
        throw corrupt_encoding("jd1: trailing bytes");
    if (!validate(curve, d))
        throw corrupt_encoding("jd1: v^2 != f mod u");
    return d;
}

} // namespace uog::jacobian
