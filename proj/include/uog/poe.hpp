#pragma once

#include <string>

#include "uog/group.hpp"

/*
 * Proof of exponentiation (u^x = w) with a prime challenge l. The prover
 * sends Q = u^floor(x/l); the verifier checks Q^l u^(x mod l) = w. In the
 * cofactor variant the claim lives in [S]G, the prover sends Q in G and the
 * verifier applies S itself: [S](Q^l u^r) = W.
 */
namespace uog::poe {

struct Statement {
    group::Element base;
    BigInt x;
    group::Element claim;
};

struct Proof {
    BigInt ell;
    group::Element Q;
    BigInt S = 1; /* 1 for plain PoE */
};

struct Verdict {
    bool accepted = false;
    std::string reason; /* empty when accepted */
    explicit operator bool() const { return accepted; }
};

/* Q = base^floor(x/ell). ell must be a probable prime, x >= 0. */
Proof prove(const group::Group & G, const group::Element & base, const BigInt & x, const BigInt & ell);
Verdict verify(const group::Group & G, const Statement & st, const Proof & pf);

/*
 * ell must be a probable prime above s_bound (primes up to s_bound are the
 * excluded set whose lcm-closure is S). Q = [floor(x/ell)]U in G.
 */
Proof prove_cofactor(const group::Group & G, const group::Element & U, const BigInt & x,
                     const BigInt & S, const BigInt & ell, unsigned long s_bound = 60);
Verdict verify_cofactor(const group::Group & G, const Statement & st, const Proof & pf,
                        unsigned long s_bound = 60);

/*
 * Order-2 forgery: claim eps*w with Q' = eps*Q. Throws domain_error unless
 * eps^2 = 1, eps != 1 and ell is odd.
 */
std::pair<Statement, Proof> forge_with_low_order(const group::Group & G, const Statement & st,
                                                 const Proof & pf, const group::Element & eps);

/*
 * Canonical statement bytes: each of descriptor, enc(base), be(x), enc(claim),
 * be(S) prefixed with be32(length), then the tag "uog-poe-v1".
 */
Bytes statement_bytes(const group::Group & G, const Statement & st, const BigInt & S = 1);

/* Probable prime of exactly lambda bits from SHA-256 of the statement; above s_bound. */
BigInt fiat_shamir_challenge(std::span<const std::uint8_t> statement, std::size_t lambda,
                             unsigned long s_bound = 0);

/* Non-interactive wrappers: ell from fiat_shamir_challenge, S = 1 means plain. */
Proof prove_fs(const group::Group & G, const Statement & st, std::size_t lambda, const BigInt & S = 1,
               unsigned long s_bound = 60);
Verdict verify_fs(const group::Group & G, const Statement & st, const Proof & pf, std::size_t lambda,
                  unsigned long s_bound = 60);

} // namespace uog::poe
