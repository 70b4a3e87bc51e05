#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "uog/group.hpp"

namespace uog::orderhunt {

/* Prime factorization by trial division then Pollard-Brent; n >= 1, up to ~128 bits. */
std::vector<std::pair<BigInt, unsigned>> factor(const BigInt & n);

struct HuntConfig {
    BigInt M;                       /* upper bound on the order */
    double u = 4;                   /* L = ceil(M^(1/u)) for primorial steps */
    std::uint64_t budget = 1ull << 32; /* group operations */
    std::size_t memory_cap = 1u << 24; /* baby-step table entries */
    bool negation = false;          /* bsgs: store {e, e^-1} classes */
};

enum class HuntStatus { found, budget_exhausted };

struct HuntResult {
    HuntStatus status = HuntStatus::budget_exhausted;
    std::optional<BigInt> order;
    std::uint64_t group_ops = 0;   /* op calls, including those inside pow */
    std::uint64_t inversions = 0;
    std::size_t table_size = 0;
    std::uint64_t giant_steps = 0;
    unsigned long L = 0;           /* primorial steps only */
    BigInt rough_order;            /* |beta|, primorial steps only */
};

/*
 * Shanks BSGS. Baby steps a^1..a^m, giant steps of m (2m with negation).
 * The first collision gives a multiple of the order; it is minimized over
 * prime divisors and verified. Throws resource_error if m exceeds the
 * memory cap.
 */
HuntResult bsgs_order(const group::GroupPtr & G, const group::Element & a, const HuntConfig & cfg);

/*
 * Primorial steps. E = prod p^floor(log_p M) over p <= L, beta = a^E.
 * Baby steps beta^j for j coprime to P (the largest primorial of primes
 * <= L that fits the baby-step width), giant steps of width b, a multiple
 * of P. A collision gives |beta|; |a| = |beta| * |a^|beta||, the second
 * factor found by splitting E prime by prime. The giant phase is sized
 * for |beta| <= L^2 and runs on until M or the budget is reached.
 */
HuntResult primorial_steps(const group::GroupPtr & G, const group::Element & a, const HuntConfig & cfg);

/* L = ceil(M^(1/u)) */
unsigned long smoothness_bound(const BigInt & M, double u);

/* True iff a^n = 1 and a^(n/p) != 1 for every prime p | n. */
bool verify_order(const group::Group & G, const group::Element & a, const BigInt & n);

/* ---- semismoothness ----------------------------------------------------- */

struct SemismoothEstimate {
    double u = 0;
    std::size_t bits = 0;
    std::uint64_t trials = 0;
    std::uint64_t hits = 0;
    std::uint64_t redraws = 0; /* samples whose factorization gave up */
    double estimate = 0;
    double lo = 0, hi = 0;     /* Wilson 95% */
};

/*
 * Fraction of uniform bits-bit integers x (top bit set) whose prime factors
 * are all below x^(2/u) with at most one above x^(1/u). Trial i draws from
 * the stream seeded with seed || be64(i); threads split trials by index.
 */
SemismoothEstimate semismooth_mc(double u, std::size_t bits, std::uint64_t trials,
                                 std::span<const std::uint8_t> seed, unsigned threads = 0);

/* Semismoothness of one integer for given u. */
bool is_semismooth(const BigInt & x, double u);

struct WeaknessReport {
    double u = 0;          /* group_bits / lambda */
    double log2_prob = 0;  /* log2 G(1/u, 2/u), interpolated */
    bool meets_rho = false; /* log2_prob <= -rho */
};

/*
 * log2 G(1/u, 2/u) interpolated linearly in u*ln(u) between table nodes
 * (u = 1 is certain; u >= 26.5 extrapolates the last segment).
 */
double log2_semismooth_probability(double u);
WeaknessReport weakness_probability(unsigned lambda, unsigned rho, std::size_t group_bits);

} // namespace uog::orderhunt
