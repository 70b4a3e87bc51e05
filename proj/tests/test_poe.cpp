#include <gtest/gtest.h>

#include "uog/errors.hpp"
#include "uog/groupgen.hpp"
#include "uog/poe.hpp"
#include "uog/testgroups.hpp"

using namespace uog;
using namespace uog::group;
using namespace uog::poe;

namespace {

jacobian::HyperCurve random_curve(const BigInt & p, const std::string & tag)
{
    PrimeField F(p);
    ByteStream s(bytes_of("poe-curve" + tag));
    for (;;) {
        FpPoly f = poly::random_poly(F, s, 7, true);
        if (poly::is_squarefree(F, f))
            return jacobian::HyperCurve(F, f);
    }
}

GroupPtr small_class_group()
{
    BigInt q = hash_to_prime(bytes_of("poe-disc"), 256, [](const BigInt & c) { return mod(c, 4) == 3; });
    return class_group(classgroup::Discriminant(-q));
}

/* honest statement with x < 2^256 */
Statement honest(const Group & G, ByteStream & s, const BigInt & S = 1)
{
    Statement st;
    st.base = G.sample(s.read(16));
    st.x = s.uniform_bits(1 + s.read_byte());
    st.claim = G.pow(G.pow(st.base, st.x), S);
    return st;
}

BigInt next_prime(const BigInt & n)
{
    BigInt r;
    mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

} // namespace

TEST(Poe, ZeroExponentGivesIdentity)
{
    GroupPtr g = mult_mod_group(101);
    Element two = test_group_element(g, 2);
    Proof pf = prove(*g, two, 0, 13);
    EXPECT_TRUE(g->is_identity(pf.Q));
    EXPECT_TRUE(verify(*g, Statement{two, 0, g->identity()}, pf));
}

TEST(Poe, MultModExample)
{
    GroupPtr g = mult_mod_group(101);
    Element two = test_group_element(g, 2);
    Proof pf = prove(*g, two, 1000, 13);
    BigInt want;
    BigInt two_z = 2, e = 76, n = 101;
    mpz_powm(want.get_mpz_t(), two_z.get_mpz_t(), e.get_mpz_t(), n.get_mpz_t());
    EXPECT_EQ(std::get<BigInt>(pf.Q.value), want);
    BigInt w;
    BigInt x = 1000;
    mpz_powm(w.get_mpz_t(), two_z.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
    EXPECT_TRUE(verify(*g, Statement{two, 1000, test_group_element(g, w)}, pf));
}

TEST(Poe, ExponentBelowChallenge)
{
    GroupPtr g = mult_mod_group(101);
    Element three = test_group_element(g, 3);
    Proof pf = prove(*g, three, 5, 13);
    EXPECT_TRUE(g->is_identity(pf.Q));
    EXPECT_TRUE(verify(*g, Statement{three, 5, test_group_element(g, 243 % 101)}, pf));
    EXPECT_FALSE(verify(*g, Statement{three, 5, test_group_element(g, 3)}, pf));
}

TEST(Poe, BadInputs)
{
    GroupPtr g = mult_mod_group(101);
    Element two = test_group_element(g, 2);
    EXPECT_THROW(prove(*g, two, 10, 15), domain_error);
    EXPECT_THROW(prove(*g, two, -1, 13), domain_error);
    EXPECT_THROW(prove_cofactor(*g, two, 10, 2, 59), domain_error);
    Proof pf = prove(*g, two, 10, 13);
    pf.ell = 15;
    Verdict v = verify(*g, Statement{two, 10, g->pow(two, 10)}, pf);
    EXPECT_FALSE(v);
    EXPECT_EQ(v.reason, "challenge not prime");
    GroupPtr other = mult_mod_group(103);
    pf = prove(*g, two, 10, 13);
    EXPECT_FALSE(verify(*g, Statement{test_group_element(other, 2), 10, g->pow(two, 10)}, pf));
    EXPECT_THROW(fiat_shamir_challenge(bytes_of("x"), 15), domain_error);
}

TEST(Poe, CompletenessAcrossAdapters)
{
    std::vector<GroupPtr> groups = {small_class_group(),
                                    jacobian_group(random_curve(BigInt("2305843009213693951"), "c")),
                                    mult_mod_group(BigInt("1000000000000000000000007") * 1000003)};
    ByteStream s(bytes_of("poe-complete"));
    for (const auto & g : groups) {
        for (int i = 0; i < 100; ++i) {
            Statement st = honest(*g, s);
            Proof pf = prove_fs(*g, st, 64);
            ASSERT_EQ(bit_length(pf.ell), 64u);
            Verdict v = verify_fs(*g, st, pf, 64);
            ASSERT_TRUE(v) << g->descriptor() << " " << i << " " << v.reason;
            Statement wrong = st;
            wrong.claim = g->op(st.claim, st.base);
            if (!g->equal(wrong.claim, st.claim)) {
                ASSERT_FALSE(verify(*g, wrong, pf));
            }
        }
    }
}

TEST(Poe, CofactorCompleteness)
{
    BigInt S = groupgen::cofactor_S(60);
    GroupPtr jac = jacobian_group(random_curve(1000003, "cof"));
    GroupPtr cls = small_class_group();
    ByteStream s(bytes_of("poe-cof"));
    for (int i = 0; i < 50; ++i) {
        Statement st = honest(*jac, s, S);
        Proof pf = prove_fs(*jac, st, 64, S);
        ASSERT_GT(pf.ell, 60);
        ASSERT_TRUE(verify_fs(*jac, st, pf, 64)) << i;
        ASSERT_TRUE(verify_cofactor(*jac, st, pf)) << i;

        Statement sc = honest(*cls, s);
        Proof pc = prove_cofactor(*cls, sc.base, sc.x, 1, pf.ell);
        ASSERT_TRUE(verify_cofactor(*cls, sc, pc));
        ASSERT_TRUE(verify(*cls, sc, pc));
    }
}

TEST(Poe, TamperingRejected)
{
    GroupPtr g = mult_mod_group(BigInt("1000000000000000000000007") * 1000003);
    ByteStream s(bytes_of("poe-tamper"));
    int rejected = 0;
    const int trials = 1000;
    for (int i = 0; i < trials; ++i) {
        Statement st = honest(*g, s);
        Proof pf = prove_fs(*g, st, 32);
        Element other = g->sample(s.read(16));
        switch (s.read_byte() % 5) {
        case 0: st.base = other; break;
        case 1: st.x += 1 + s.uniform_bits(32); break;
        case 2: st.claim = other; break;
        case 3: pf.Q = other; break;
        default: pf.ell = next_prime(pf.ell); break;
        }
        rejected += !verify_fs(*g, st, pf, 32);
    }
    EXPECT_GE(rejected, 999);
}

TEST(Poe, OrderTwoForgery)
{
    BigInt N = BigInt("1000000000000000000000007") * 1000003;
    GroupPtr g = mult_mod_group(N);
    Element eps = order_two_element(g);
    ASSERT_EQ(std::get<BigInt>(eps.value), N - 1);
    ByteStream s(bytes_of("poe-forge"));
    BigInt S = groupgen::cofactor_S(60);
    ASSERT_EQ(mod(S, 2), 0);
    for (int i = 0; i < 100; ++i) {
        Statement st = honest(*g, s);
        Proof pf = prove_fs(*g, st, 64);
        auto [fs, fp] = forge_with_low_order(*g, st, pf, eps);
        ASSERT_FALSE(g->equal(fs.claim, st.claim));
        ASSERT_TRUE(verify(*g, fs, fp)) << i;

        Statement sc = honest(*g, s, S);
        Proof pc = prove_fs(*g, sc, 64, S);
        ASSERT_TRUE(verify_cofactor(*g, sc, pc));
        auto [fsc, fpc] = forge_with_low_order(*g, sc, pc, eps);
        ASSERT_FALSE(verify_cofactor(*g, fsc, fpc)) << i;
    }
    Statement st = honest(*g, s);
    Proof pf = prove(*g, st.base, st.x, 13);
    pf.ell = 2; /* test-only even challenge */
    EXPECT_THROW(forge_with_low_order(*g, st, pf, eps), domain_error);
    pf.ell = 13;
    EXPECT_THROW(forge_with_low_order(*g, st, pf, test_group_element(g, 2)), domain_error);
    EXPECT_THROW(forge_with_low_order(*g, st, pf, g->identity()), domain_error);
}

TEST(Poe, OrderSevenTamperingNeedsRoot)
{
    PrimeField F(1000003);
    ByteStream s(bytes_of("poe-seven"));
    std::optional<groupgen::KnownOrderCurve> k;
    while (!k)
        k = groupgen::known_order_curve(F, poly::random_poly(F, s, 3, false));
    GroupPtr g = jacobian_group(k->curve);
    Element P = g->element(k->D);
    BigInt S = groupgen::cofactor_S(60);
    for (int i = 0; i < 5; ++i) {
        Statement st = honest(*g, s, S);
        Proof pf = prove_fs(*g, st, 64, S);
        Statement bad = st;
        bad.claim = g->op(st.claim, P);
        /* every Q + T with T in <P> */
        Element T = g->identity();
        for (int j = 0; j < 7; ++j, T = g->op(T, P)) {
            Proof fp = pf;
            fp.Q = g->op(pf.Q, T);
            ASSERT_FALSE(verify_cofactor(*g, bad, fp)) << i << " " << j;
        }

        /* without S the root [1/l]P is available */
        Statement plain = st;
        plain.claim = g->pow(st.base, st.x);
        Proof pp = prove(*g, plain.base, plain.x, pf.ell);
        bad = plain;
        bad.claim = g->op(plain.claim, P);
        int accepted = 0;
        T = g->identity();
        for (int j = 0; j < 7; ++j, T = g->op(T, P)) {
            Proof fp = pp;
            fp.Q = g->op(pp.Q, T);
            accepted += bool(verify(*g, bad, fp));
        }
        BigInt inv;
        BigInt seven = 7;
        mpz_invert(inv.get_mpz_t(), pf.ell.get_mpz_t(), seven.get_mpz_t());
        Proof root = pp;
        root.Q = g->op(pp.Q, g->pow(P, inv));
        EXPECT_EQ(accepted, 1);
        EXPECT_TRUE(verify(*g, bad, root));
    }
}

TEST(Poe, CofactorVerifierOneExtraMultiplicationByS)
{
    BigInt S = groupgen::cofactor_S(60);
    auto cg = std::make_shared<CountingGroup>(jacobian_group(random_curve(1000003, "count")));
    ByteStream s(bytes_of("poe-count"));
    for (int i = 0; i < 10; ++i) {
        Statement st = honest(*cg, s, S);
        Proof pc = prove_fs(*cg, st, 64, S);
        Statement sp = st;
        sp.claim = cg->pow(st.base, st.x);
        Proof pp = prove(*cg, st.base, st.x, pc.ell);

        cg->reset();
        ASSERT_TRUE(verify(*cg, sp, pp));
        std::vector<BigInt> plain = cg->pow_log();
        cg->reset();
        ASSERT_TRUE(verify_cofactor(*cg, st, pc));
        std::vector<BigInt> cof = cg->pow_log();
        ASSERT_EQ(cof.size(), plain.size() + 1);
        ASSERT_TRUE(std::equal(plain.begin(), plain.end(), cof.begin()));
        EXPECT_EQ(cof.back(), S);
    }
}

TEST(Poe, FiatShamirChallenge)
{
    GroupPtr g = mult_mod_group(BigInt("1000000000000000000000007") * 1000003);
    ByteStream s(bytes_of("poe-fs"));
    for (int i = 0; i < 1000; ++i) {
        Statement st = honest(*g, s);
        Bytes b = statement_bytes(*g, st, 2);
        BigInt l = fiat_shamir_challenge(b, 16, 60);
        ASSERT_EQ(l, fiat_shamir_challenge(b, 16, 60));
        ASSERT_EQ(bit_length(l), 16u);
        ASSERT_TRUE(is_probable_prime(l));
        ASSERT_GT(l, 60);
    }
    Statement st = honest(*g, s);
    EXPECT_NE(statement_bytes(*g, st, 1), statement_bytes(*g, st, 2));
    Proof pf = prove_fs(*g, st, 64);
    pf.ell = next_prime(pf.ell);
    pf.Q = g->pow(st.base, st.x / pf.ell);
    Verdict v = verify_fs(*g, st, pf, 64);
    EXPECT_FALSE(v);
    EXPECT_TRUE(verify(*g, st, pf));
}
