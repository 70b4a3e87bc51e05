#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "uog/errors.hpp"
#include "uog/jacobian.hpp"

using namespace uog;
using namespace uog::jacobian;

namespace {

FpPoly P(const PrimeField & F, std::initializer_list<long> c)
{
    return poly::reduce(F, FpPoly(c));
}

HyperCurve x7_plus_1()
{
    PrimeField F(11);
    return HyperCurve(F, P(F, {1, 0, 0, 0, 0, 0, 0, 1}));
}

/* random squarefree monic septic from a seed */
HyperCurve random_curve(long p, const std::string & tag, bool irreducible = false)
{
    PrimeField F(p);
    ByteStream s(bytes_of("curve" + tag));
    for (;;) {
        FpPoly f = poly::random_poly(F, s, 7, true);
        if (!poly::is_squarefree(F, f))
            continue;
        if (irreducible && !poly::is_irreducible(F, f))
            continue;
        return HyperCurve(F, f);
    }
}

Bytes seed_of(const std::string & s, int i)
{
    return bytes_of(s + std::to_string(i));
}

/* N_1 by direct enumeration: affine solutions of y^2 = f(x) plus infinity */
long brute_n1(const HyperCurve & c)
{
    long p = c.field().modulus().get_si();
    long n = 1;
    for (long x = 0; x < p; ++x) {
        BigInt fx = poly::eval(c.field(), c.f(), x);
        for (long y = 0; y < p; ++y)
            if (mod(BigInt(y * y) - fx, p) == 0)
                ++n;
    }
    return n;
}

} // namespace

TEST(Jacobian, CurveValidation)
{
    PrimeField F(11);
    EXPECT_THROW(HyperCurve(F, P(F, {1, 0, 0, 0, 0, 0, 1})), domain_error);
    EXPECT_THROW(HyperCurve(F, P(F, {1, 0, 0, 0, 0, 0, 0, 2})), domain_error);
    /* x^7 = x * x^6, x^2 factor */
    EXPECT_THROW(HyperCurve(F, P(F, {0, 0, 1, 0, 0, 0, 0, 1})), domain_error);
}

TEST(Jacobian, ValidateExamples)
{
    HyperCurve c = x7_plus_1();
    const PrimeField & F = c.field();
    EXPECT_TRUE(validate(c, identity()));
    EXPECT_TRUE(validate(c, {FpPoly::x(), FpPoly::constant(1)}));
    EXPECT_FALSE(validate(c, {FpPoly::x(), FpPoly::constant(2)}));
    EXPECT_FALSE(validate(c, {P(F, {0, 2}), FpPoly::constant(1)}));
    EXPECT_FALSE(validate(c, {FpPoly::x(), FpPoly::x()}));
    EXPECT_THROW(add(c, {FpPoly::x(), FpPoly::constant(2)}, identity()), domain_error);
}

TEST(Jacobian, ExampleTwoOrderSeven)
{
    HyperCurve c = x7_plus_1();
    MumfordDivisor d{FpPoly::x(), FpPoly::constant(1)};
    MumfordDivisor acc = d;
    for (int k = 2; k <= 7; ++k) {
        acc = add(c, acc, d);
        if (k < 7) {
            EXPECT_FALSE(acc.is_identity()) << k;
        }
    }
    EXPECT_TRUE(acc.is_identity());
    EXPECT_TRUE(scalar_mul(c, 7, d).is_identity());
    EXPECT_EQ(add(c, d, negate(c, d)), identity());
}

TEST(Jacobian, GroupLawsAtDeskScale)
{
    for (long p : {31L, 101L, 127L}) {
        for (int k = 0; k < 10; ++k) {
            HyperCurve c = random_curve(p, std::to_string(p) + "/" + std::to_string(k));
            for (int i = 0; i < 100; ++i) {
                MumfordDivisor a = sample_divisor(c, seed_of("a", i));
                MumfordDivisor b = sample_divisor(c, seed_of("b", i));
                MumfordDivisor e = sample_divisor(c, seed_of("c", i));
                MumfordDivisor ab = add(c, a, b);
                ASSERT_TRUE(validate(c, ab));
                ASSERT_EQ(ab, add(c, b, a));
                ASSERT_EQ(add(c, ab, e), add(c, a, add(c, b, e)));
                ASSERT_EQ(add(c, a, identity()), a);
                ASSERT_TRUE(add(c, a, negate(c, a)).is_identity());
                ASSERT_EQ(doubling(c, a), add(c, a, a));
            }
        }
    }
}

TEST(Jacobian, ScalarMulIsHomomorphic)
{
    HyperCurve c = random_curve(1000003, "hom");
    gmp_randclass r(gmp_randinit_mt);
    r.seed(9);
    for (int i = 0; i < 50; ++i) {
        MumfordDivisor d = sample_divisor(c, seed_of("d", i));
        BigInt m = r.get_z_bits(64), n = r.get_z_bits(64);
        ASSERT_EQ(scalar_mul(c, m + n, d), add(c, scalar_mul(c, m, d), scalar_mul(c, n, d)));
        ASSERT_EQ(scalar_mul(c, -m, d), negate(c, scalar_mul(c, m, d)));
    }
    EXPECT_TRUE(scalar_mul(c, 0, sample_divisor(c, bytes_of("z"))).is_identity());
}

TEST(Jacobian, SampleDivisorDeterministicAndValid)
{
    HyperCurve c = random_curve(65537, "s");
    for (int i = 0; i < 50; ++i) {
        MumfordDivisor d = sample_divisor(c, seed_of("x", i));
        EXPECT_EQ(d, sample_divisor(c, seed_of("x", i)));
        EXPECT_TRUE(validate(c, d));
        EXPECT_EQ(d.u.degree(), 3);
    }
}

TEST(Jacobian, PointCountMatchesDirectEnumeration)
{
    for (int k = 0; k < 10; ++k) {
        HyperCurve c = random_curve(31, "n1/" + std::to_string(k));
        EXPECT_EQ(zeta_data(c).n1, brute_n1(c));
    }
}

TEST(Jacobian, OracleHasseWeilAndLagrange)
{
    for (int k = 0; k < 50; ++k) {
        HyperCurve c = random_curve(101, "hw/" + std::to_string(k));
        BigInt n = order_oracle(c);
        double lo = std::pow(std::sqrt(101.0) - 1, 6), hi = std::pow(std::sqrt(101.0) + 1, 6);
        ASSERT_GE(n.get_d(), lo);
        ASSERT_LE(n.get_d(), hi);
        if (k >= 5)
            continue;
        for (int i = 0; i < 20; ++i)
            ASSERT_TRUE(scalar_mul(c, n, sample_divisor(c, seed_of("l", i))).is_identity());
    }
}

TEST(Jacobian, OracleOnExampleCurve)
{
    HyperCurve c = x7_plus_1();
    BigInt n = order_oracle(c);
    EXPECT_EQ(mod(n, 7), 0);
    for (int i = 0; i < 50; ++i)
        ASSERT_TRUE(scalar_mul(c, n, sample_divisor(c, seed_of("e", i))).is_identity());
}

TEST(Jacobian, IrreducibleCurvesHaveOddOrder)
{
    const long primes[] = {31, 101, 127};
    for (int k = 0; k < 30; ++k) {
        long p = primes[k % 3];
        HyperCurve c = random_curve(p, "odd/" + std::to_string(k), true);
        EXPECT_EQ(mod(order_oracle(c), 2), 1) << p;
    }
}

TEST(Jacobian, OracleRejectsLargeFields)
{
    EXPECT_THROW(order_oracle(random_curve(8209, "big")), resource_error);
}

TEST(Jacobian, SamplingCoversGroup)
{
    HyperCurve c = random_curve(31, "cover");
    BigInt n = order_oracle(c);
    long target = n.get_si();
    std::set<std::vector<BigInt>> seen;
    for (long i = 0; i < 2 * target; ++i) {
        MumfordDivisor d = sample_divisor(c, seed_of("cov", static_cast<int>(i)));
        std::vector<BigInt> k = d.u.coeffs();
        k.push_back(-1);
        k.insert(k.end(), d.v.coeffs().begin(), d.v.coeffs().end());
        seen.insert(k);
    }
    EXPECT_GE(static_cast<double>(seen.size()), 0.5 * static_cast<double>(target));
}

TEST(Jacobian, CompressionRoundTrip)
{
    HyperCurve c = random_curve(1000003, "cmp");
    PrimeField F(BigInt("18446744073709551557"));
    ByteStream s(bytes_of("big-curve"));
    FpPoly f;
    do
        f = poly::random_poly(F, s, 7, true);
    while (!poly::is_squarefree(F, f));
    HyperCurve big(F, f);
    for (int i = 0; i < 1000; ++i) {
        MumfordDivisor d = sample_divisor(big, seed_of("r", i));
        Bytes b = compress_divisor(big, d);
        ASSERT_EQ(b.size(), 3 * F.element_bytes() + 1);
        ASSERT_EQ(decompress_divisor(big, b), d);
    }
    EXPECT_EQ(compress_divisor(big, identity()), Bytes{0x00});
    EXPECT_EQ(decompress_divisor(big, Bytes{0x00}), identity());
    /* lower-degree divisors take the explicit branch */
    for (int i = 0; i < 100; ++i) {
        MumfordDivisor d = add(c, sample_divisor(c, seed_of("p", i)), sample_divisor(c, seed_of("q", i)));
        Bytes b = compress_divisor(c, d);
        ASSERT_EQ(decompress_divisor(c, b), d);
    }
    HyperCurve e = x7_plus_1();
    MumfordDivisor low{FpPoly::x(), FpPoly::constant(1)};
    Bytes lb = compress_divisor(e, low);
    EXPECT_EQ(lb[0], 0x11);
    EXPECT_EQ(decompress_divisor(e, lb), low);
}

TEST(Jacobian, CompressionRejectsInconsistentBits)
{
    HyperCurve c = random_curve(1000003, "bits");
    const PrimeField & F = c.field();
    int flagged = 0;
    for (int i = 0; i < 200; ++i) {
        MumfordDivisor d = sample_divisor(c, seed_of("i", i));
        Bytes b = compress_divisor(c, d);
        std::size_t nf = poly::factor_squarefree(F, d.u).size();
        for (unsigned bit = static_cast<unsigned>(nf); bit < 4; ++bit) {
            Bytes bad = b;
            bad[0] |= static_cast<std::uint8_t>(1u << bit);
            EXPECT_THROW(decompress_divisor(c, bad), corrupt_encoding);
            ++flagged;
        }
    }
    EXPECT_GT(flagged, 0);
    EXPECT_THROW(decompress_divisor(c, Bytes{}), corrupt_encoding);
    EXPECT_THROW(decompress_divisor(c, Bytes{0x00, 0x01}), corrupt_encoding);
    EXPECT_THROW(decompress_divisor(c, Bytes{0x50}), corrupt_encoding);
}

TEST(Jacobian, SerializeRoundTripAndRejects)
{
    HyperCurve c = random_curve(1000003, "ser");
    for (int i = 0; i < 100; ++i) {
        MumfordDivisor d = sample_divisor(c, seed_of("w", i));
        Bytes b = serialize(c, d);
        ASSERT_EQ(b.size(), 5 + 6 * c.field().element_bytes());
        ASSERT_EQ(deserialize(c, b), d);
        Bytes bad = b;
        bad.back() ^= 1;
        ASSERT_THROW(deserialize(c, bad), corrupt_encoding);
    }
    EXPECT_EQ(deserialize(c, serialize(c, identity())), identity());
    EXPECT_THROW(deserialize(c, bytes_of("jd1:")), corrupt_encoding);
}
