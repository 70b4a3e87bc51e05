#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uog/classgroup.hpp"
#include "uog/jacobian.hpp"

namespace uog::groupgen {

/* (lambda, rho) security target and the resulting group size. */
struct SecurityParams {
    unsigned lambda = 0;
    unsigned rho = 0;
    double u = 0;
    std::size_t group_bits = 0;
    bool on_grid = false;
};

/* Smoothness parameter u for failure probability 2^-rho; linear between table points. */
double rho_to_u(unsigned rho);
/*
 * Table values on the {55,80,100,128} x {40,55,64,80,100,128} grid,
 * ceil(u * lambda) elsewhere. Throws domain_error for lambda or rho below 40.
 */
SecurityParams security_params(unsigned lambda, unsigned rho);
std::size_t group_size_for(unsigned lambda, unsigned rho);

/* One stream draw: byte offset in its stream, purpose, raw bytes, verdict. */
struct TranscriptLine {
    std::string stream;
    std::uint64_t offset = 0;
    std::string purpose;
    Bytes raw;
    std::string verdict;
};
std::string format_transcript(const std::vector<TranscriptLine> & lines);

struct GenOutput {
    SecurityParams params;
    Bytes seed;
    BigInt p;
    jacobian::HyperCurve curve;
    jacobian::MumfordDivisor P;
    std::size_t rejections = 0;
    std::vector<TranscriptLine> transcript;
};

/*
 * Nothing-up-my-sleeve genus-3 generation. n = ceil(group_bits / 3);
 * p = hash_to_prime(seed || "p", n); u, v, w are read in that order from the
 * stream seeded with seed || "uvw". Gives up after 10^4 w draws.
 */
GenOutput gen_jacobian(unsigned lambda, unsigned rho, std::span<const std::uint8_t> seed);
/* Same generation with an explicit field size, bypassing the table. */
GenOutput gen_jacobian_bits(std::size_t field_bits, std::span<const std::uint8_t> seed);

struct ClassGroupGen {
    SecurityParams params;
    classgroup::Discriminant d;
    classgroup::QuadForm generator;
    std::vector<TranscriptLine> transcript;
};

/* Delta = -q, q = hash_to_prime(seed || "d", 2 * group_bits) with q = 3 mod 4. */
ClassGroupGen gen_classgroup(unsigned lambda, unsigned rho, std::span<const std::uint8_t> seed);
ClassGroupGen gen_classgroup_bits(std::size_t disc_bits, std::span<const std::uint8_t> seed);

/*
 * y^2 = x^7 + c(x)^2 with D = <x, c(0)>, an element of order 7. deg c <= 3.
 * nullopt if f is not squarefree (the caller picks another c).
 */
struct KnownOrderCurve {
    jacobian::HyperCurve curve;
    jacobian::MumfordDivisor D;
};
std::optional<KnownOrderCurve> known_order_curve(const PrimeField & F, const FpPoly & c);

/* lcm(1..bound). 60 is the Jacobian default. */
BigInt cofactor_S(unsigned long bound = 60);
/* 1 for a prime discriminant, 2 otherwise */
unsigned long class_group_cofactor_bound(const classgroup::Discriminant & d);

} // namespace uog::groupgen
