#include "uog/poe.hpp"

#include "uog/errors.hpp"

namespace uog::poe {

using group::Element;
using group::Group;

namespace {

Verdict reject(std::string why) { return Verdict{false, std::move(why)}; }

void put_field(Bytes & out, std::span<const std::uint8_t> field)
{
    Bytes len = to_bytes_be(BigInt(static_cast<unsigned long>(field.size())), 4);
    out.insert(out.end(), len.begin(), len.end());
    out.insert(out.end(), field.begin(), field.end());
}

/* checks shared by both verifiers; empty string on success */
std::string precheck(const Group & G, const Statement & st, const Proof & pf)
{
    if (st.x < 0)
        return "negative exponent";
    if (pf.ell < 2 || !is_probable_prime(pf.ell))
        return "challenge not prime";
    for (const Element * e : {&st.base, &st.claim, &pf.Q})
        if (e->group_id != G.id())
            return "element from another group";
    if (!G.membership_check(st.base))
        return "base not in group";
    if (!G.membership_check(st.claim))
        return "claim not in group";
    if (!G.membership_check(pf.Q))
        return "Q not in group";
    return {};
}

} // namespace

Proof prove(const Group & G, const Element & base, const BigInt & x, const BigInt & ell)
{
    if (x < 0)
        throw domain_error("poe: negative exponent");
    if (ell < 2 || !is_probable_prime(ell))
        throw domain_error("poe: challenge is not prime");
    BigInt q = x / ell;
    return Proof{ell, G.pow(base, q), 1};
}

Verdict verify(const Group & G, const Statement & st, const Proof & pf)
{
    if (auto why = precheck(G, st, pf); !why.empty())
        return reject(why);
    BigInt r = st.x % pf.ell;
    Element lhs = G.op(G.pow(pf.Q, pf.ell), G.pow(st.base, r));
    if (!G.equal(lhs, st.claim))
        return reject("Q^l u^r != w");
    return Verdict{true, {}};
}

Proof prove_cofactor(const Group & G, const Element & U, const BigInt & x, const BigInt & S,
                     const BigInt & ell, unsigned long s_bound)
{
    if (S < 1)
        throw domain_error("poe: cofactor must be positive");
    if (ell <= s_bound)
        throw domain_error("poe: challenge inside the excluded small-prime set");
    Proof pf = prove(G, U, x, ell);
    pf.S = S;
    return pf;
}

Verdict verify_cofactor(const Group & G, const Statement & st, const Proof & pf, unsigned long s_bound)
{
    if (pf.S < 1)
        return reject("bad cofactor");
    if (pf.ell <= s_bound)
        return reject("challenge inside the excluded set");
    if (auto why = precheck(G, st, pf); !why.empty())
        return reject(why);
    BigInt r = st.x % pf.ell;
    Element inner = G.op(G.pow(pf.Q, pf.ell), G.pow(st.base, r));
    if (!G.equal(G.pow(inner, pf.S), st.claim))
        return reject("[S]([l]Q + [r]U) != W");
    return Verdict{true, {}};
}

std::pair<Statement, Proof> forge_with_low_order(const Group & G, const Statement & st, const Proof & pf,
                                                 const Element & eps)
{
    if (G.is_identity(eps) || !G.is_identity(G.op(eps, eps)))
        throw domain_error("poe: eps is not of order 2");
    if (mpz_even_p(pf.ell.get_mpz_t()))
        throw domain_error("poe: forgery needs an odd challenge");
    Statement fs = st;
    fs.claim = G.op(eps, st.claim);
    Proof fp = pf;
    fp.Q = G.op(eps, pf.Q);
    return {fs, fp};
}

Bytes statement_bytes(const Group & G, const Statement & st, const BigInt & S)
{
    Bytes out;
    put_field(out, bytes_of(G.descriptor()));
    put_field(out, G.encode(st.base));
    put_field(out, to_bytes_be(st.x));
    put_field(out, G.encode(st.claim));
    put_field(out, to_bytes_be(S));
    Bytes tag = bytes_of("uog-poe-v1");
    out.insert(out.end(), tag.begin(), tag.end());
    return out;
}

BigInt fiat_shamir_challenge(std::span<const std::uint8_t> statement, std::size_t lambda, unsigned long s_bound)
{
    if (lambda < 16)
        throw domain_error("poe: challenge size below 16 bits");
    ByteStream s(sha256(statement));
    return hash_to_prime(s, lambda, [&](const BigInt & c) { return c > s_bound; });
}

Proof prove_fs(const Group & G, const Statement & st, std::size_t lambda, const BigInt & S, unsigned long s_bound)
{
    bool cof = S != 1;
    BigInt ell = fiat_shamir_challenge(statement_bytes(G, st, S), lambda, cof ? s_bound : 0);
    return cof ? prove_cofactor(G, st.base, st.x, S, ell, s_bound) : prove(G, st.base, st.x, ell);
}

Verdict verify_fs(const Group & G, const Statement & st, const Proof & pf, std::size_t lambda, unsigned long s_bound)
{
    bool cof = pf.S != 1;
    BigInt ell = fiat_shamir_challenge(statement_bytes(G, st, pf.S), lambda, cof ? s_bound : 0);
    if (ell != pf.ell)
        return reject("challenge does not match the statement");
    return cof ? verify_cofactor(G, st, pf, s_bound) : verify(G, st, pf);
}

} // namespace uog::poe
