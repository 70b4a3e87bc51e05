#include <cmath>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "uog/classgroup.hpp"
#include "uog/errors.hpp"

using namespace uog;
using namespace uog::classgroup;

namespace {

/* fundamental: squarefree odd part, D = 1 mod 4 or D = 4m with m = 2,3 mod 4 */
bool is_fundamental(long D)
{
    auto squarefree = [](long n) {
        for (long q = 2; q * q <= n; ++q)
            if (n % (q * q) == 0)
                return false;
        return true;
    };
    long n = -D;
    if (((D % 4) + 4) % 4 == 1)
        return squarefree(n);
    if (n % 4 != 0)
        return false;
    long m = n / 4;
    long mm = ((-m % 4) + 4) % 4;
    return (mm == 2 || mm == 3) && squarefree(m);
}

std::string key(const QuadForm & f)
{
    return f.a.get_str() + "," + f.b.get_str() + "," + f.c.get_str();
}

/* SL2(Z) action: f(px + qy, rx + sy) */
QuadForm transform(const QuadForm & f, long p, long q, long r, long s)
{
    QuadForm g;
    g.a = f.a * p * p + f.b * p * r + f.c * r * r;
    g.b = 2 * f.a * p * q + f.b * (p * s + q * r) + 2 * f.c * r * s;
    g.c = f.a * q * q + f.b * q * s + f.c * s * s;
    return g;
}

} // namespace

TEST(ClassGroup, IdentityExamples)
{
    EXPECT_EQ(identity(Discriminant(-4)), (QuadForm{1, 0, 1}));
    EXPECT_EQ(identity(Discriminant(-7)), (QuadForm{1, 1, 2}));
    EXPECT_EQ(identity(Discriminant(-23)), (QuadForm{1, 1, 6}));
}

TEST(ClassGroup, DiscriminantValidation)
{
    EXPECT_THROW(Discriminant(5), domain_error);
    EXPECT_THROW(Discriminant(-6), domain_error);
    EXPECT_TRUE(Discriminant(-23).is_prime_discriminant());
    EXPECT_FALSE(Discriminant(-20).is_prime_discriminant());
}

TEST(ClassGroup, ReduceExamples)
{
    EXPECT_EQ(reduce({1, 1, 6}), (QuadForm{1, 1, 6}));
    EXPECT_EQ(reduce({3, 1, 2}), (QuadForm{2, -1, 3}));
    /* (6,5,2) maps to (2,-1,3) under x -> -y, y -> x + y */
    QuadForm r = reduce({6, 5, 2});
    EXPECT_EQ(r, (QuadForm{2, -1, 3}));
    EXPECT_EQ(transform({6, 5, 2}, 0, -1, 1, 1), r);
    EXPECT_THROW(reduce({0, 1, 6}), domain_error);
    EXPECT_THROW(reduce({-1, 1, 6}), domain_error);
}

TEST(ClassGroup, ReduceIsIdempotentAndClassInvariant)
{
    /* random SL2 transforms of reduced forms reduce back to the same form */
    Discriminant d(-1000003 * 4 + 1);
    std::vector<std::array<long, 4>> mats = {{1, 1, 0, 1}, {0, -1, 1, 0}, {2, 1, 1, 1},
                                             {1, 0, 3, 1}, {5, 2, 2, 1}, {1, -4, 0, 1}};
    QuadForm f = sample_element(d, bytes_of("reduce"));
    for (int i = 0; i < 50; ++i) {
        QuadForm g = f;
        for (int k = 0; k <= i % 6; ++k) {
            auto & m = mats[(i + k) % mats.size()];
            g = transform(g, m[0], m[1], m[2], m[3]);
        }
        ASSERT_EQ(g.discriminant(), d.value());
        ASSERT_EQ(reduce(g), f);
        ASSERT_EQ(reduce(reduce(g)), f);
        f = compose(f, f);
    }
}

TEST(ClassGroup, ComposeExamples)
{
    Discriminant d(-23);
    QuadForm e = identity(d), f{2, 1, 3}, g{2, -1, 3};
    EXPECT_EQ(compose(e, f), f);
    EXPECT_EQ(compose(f, g), e);
    EXPECT_EQ(compose(f, f), g);
    EXPECT_EQ(pow(f, 0), e);
    EXPECT_EQ(pow(f, 3), e);
    EXPECT_EQ(pow(f, -1), g);
    EXPECT_EQ(invert(invert(f)), f);
    EXPECT_THROW(compose(f, identity(Discriminant(-7))), domain_error);
}

TEST(ClassGroup, EnumerationExamples)
{
    auto forms = enumerate_class_group(Discriminant(-23));
    std::set<std::string> got;
    for (auto & f : forms)
        got.insert(key(f));
    EXPECT_EQ(got, (std::set<std::string>{"1,1,6", "2,1,3", "2,-1,3"}));
    EXPECT_EQ(enumerate_class_group(Discriminant(-4)).size(), 1u);
    EXPECT_EQ(enumerate_class_group(Discriminant(-47)).size(), 5u);
    EXPECT_THROW(enumerate_class_group(Discriminant(-40000003)), resource_error);
}

TEST(ClassGroup, EnumerationMatchesKnownClassNumbers)
{
    /* h(D) for fundamental D, tabulated */
    std::map<long, std::size_t> h = {{-3, 1},  {-4, 1},  {-7, 1},  {-8, 1},   {-15, 2},
                                     {-20, 2}, {-23, 3}, {-39, 4}, {-47, 5},  {-56, 4},
                                     {-71, 7}, {-84, 4}, {-95, 8}, {-163, 1}, {-199, 9}};
    for (auto [D, n] : h)
        EXPECT_EQ(enumerate_class_group(Discriminant(D)).size(), n) << D;
}

/* full Cayley table for every fundamental |D| <= 2000 with h <= 50 */
TEST(ClassGroup, GroupLawsOnEnumeratedSets)
{
    for (long D = -3; D >= -2000; --D) {
        if (!(((D % 4) + 4) % 4 == 0 || ((D % 4) + 4) % 4 == 1) || !is_fundamental(D))
            continue;
        Discriminant d(D);
        auto forms = enumerate_class_group(d);
        if (forms.size() > 50)
            continue;
        std::map<std::string, std::size_t> index;
        for (std::size_t i = 0; i < forms.size(); ++i)
            index[key(forms[i])] = i;
        std::size_t n = forms.size();
        std::vector<std::size_t> table(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                QuadForm c = compose(forms[i], forms[j]);
                ASSERT_TRUE(is_reduced(c));
                auto it = index.find(key(c));
                ASSERT_NE(it, index.end());
                table[i * n + j] = it->second;
            }
        std::size_t e = index.at(key(identity(d)));
        for (std::size_t i = 0; i < n; ++i) {
            ASSERT_EQ(table[e * n + i], i);
            ASSERT_EQ(table[i * n + index.at(key(invert(forms[i])))], e);
            for (std::size_t j = 0; j < n; ++j) {
                ASSERT_EQ(table[i * n + j], table[j * n + i]);
                for (std::size_t k = 0; k < n; ++k)
                    ASSERT_EQ(table[table[i * n + j] * n + k], table[i * n + table[j * n + k]]);
            }
        }
    }
}

TEST(ClassGroup, SampleElement)
{
    Discriminant d(-23);
    std::set<std::string> classes{"1,1,6", "2,1,3", "2,-1,3"};
    for (int i = 0; i < 30; ++i) {
        Bytes seed = bytes_of("s" + std::to_string(i));
        QuadForm f = sample_element(d, seed);
        EXPECT_EQ(f, sample_element(d, seed));
        EXPECT_EQ(f.discriminant(), -23);
        EXPECT_TRUE(classes.count(key(f)));
    }
    Discriminant big(-BigInt("340282366920938463463374607431768211507"));
    QuadForm g = sample_element(big, bytes_of("big"));
    EXPECT_TRUE(is_reduced(g));
    EXPECT_EQ(g.discriminant(), big.value());
}

/* analytic class number formula, Euler product truncated at 2^17 */
double analytic_h(const BigInt & n)
{
    static const std::vector<unsigned long> primes = primes_up_to(1ul << 17);
    double l = 1;
    for (unsigned long p : primes) {
        int chi = p == 2 ? (mod(-n, 8) == 1 ? 1 : -1) : jacobi(-n, p);
        l *= 1.0 / (1.0 - chi / static_cast<double>(p));
    }
    return std::sqrt(n.get_d()) / M_PI * l;
}

TEST(ClassGroup, AnalyticOracleMatchesEnumeration)
{
    for (long n : {23L, 47L, 199L, 1019L, 100003L, 1000003L}) {
        double h = static_cast<double>(enumerate_class_group(Discriminant(-n)).size());
        EXPECT_NEAR(analytic_h(n) / h, 1.0, 0.1) << n;
    }
}

TEST(ClassGroup, ClassNumberNearSqrtDelta)
{
    /* mean log2 h over 100 prime discriminants near 2^30 */
    double total = 0, total_half = 0;
    int count = 0;
    gmp_randclass r(gmp_randinit_mt);
    r.seed(5);
    while (count < 100) {
        BigInt n = r.get_z_bits(30);
        mpz_setbit(n.get_mpz_t(), 29);
        n -= mod(n, 4);
        n += 3; /* -n = 1 mod 4 */
        if (!is_probable_prime(n))
            continue;
        total += std::log2(analytic_h(n));
        total_half += 0.5 * std::log2(n.get_d());
        ++count;
    }
    double mean = total / count, target = total_half / count;
    EXPECT_GT(mean, target - 8);
    EXPECT_LT(mean, target + 8);
}

TEST(ClassGroup, TextEncoding)
{
    Discriminant d(-23);
    QuadForm f{2, -1, 3};
    EXPECT_EQ(to_string(f), "qf1:17:2:-1");
    EXPECT_EQ(parse(to_string(f)), f);
    EXPECT_EQ(parse("qf1:17:1:+1", d), identity(d));
    EXPECT_THROW(parse("qf1:17:2:1"), corrupt_encoding);
    EXPECT_THROW(parse("qf1:17:3:+1"), corrupt_encoding);  /* 12 does not divide 24 */
    EXPECT_THROW(parse("qf1:17:6:+5"), corrupt_encoding);  /* not reduced */
    EXPECT_THROW(parse("qf1:17:2:-0"), corrupt_encoding);
    EXPECT_THROW(parse("qf2:17:2:+1"), corrupt_encoding);
    EXPECT_THROW(parse("qf1:7:1:+1", d), corrupt_encoding);
    /* non-primitive (2,2,2) at D = -12 */
    EXPECT_THROW(parse("qf1:c:2:+2"), corrupt_encoding);
}
