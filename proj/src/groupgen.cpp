#include "uog/groupgen.hpp"

#include <array>
#include <cmath>

#include "uog/errors.hpp"

namespace uog::groupgen {

namespace {

constexpr std::array<unsigned, 4> grid_lambda{55, 80, 100, 128};
constexpr std::array<unsigned, 6> grid_rho{40, 55, 64, 80, 100, 128};
constexpr std::size_t table[4][6] = {
    {660, 825, 880, 1045, 1265, 1430},
    {960, 1200, 1280, 1520, 1840, 2080},
    {1200, 1500, 1600, 1900, 2300, 2600},
    {1536, 1920, 2048, 2432, 2944, 3392},
};
/* read off the lambda = 128 row */
constexpr std::array<double, 6> grid_u{12, 15, 16, 19, 23, 26.5};

std::string hex_line(const TranscriptLine & l)
{
    return l.stream + " " + std::to_string(l.offset) + " " + l.purpose + " " + to_hex(l.raw) + " " +
           l.verdict;
}

struct Drawer {
    ByteStream stream;
    std::string name;
    std::vector<TranscriptLine> & log;

    BigInt field(const BigInt & p, const std::string & purpose)
    {
        std::size_t n = (bit_length(p) + 64 + 7) / 8;
        std::uint64_t off = stream.offset();
        Bytes raw = stream.read(n);
        log.push_back({name, off, purpose, raw, "ok"});
        return mod(from_bytes_be(raw), p);
    }
};

DrawObserver observe(std::vector<TranscriptLine> & log, const std::string & name)
{
    return [&log, name](std::uint64_t off, const Bytes & raw, bool ok, std::string_view why) {
        log.push_back({name, off, "prime-candidate", raw, ok ? "accepted" : "rejected:" + std::string(why)});
    };
}

} // namespace

double rho_to_u(unsigned rho)
{
    if (rho < grid_rho.front())
        throw domain_error("rho below 40 is outside the supported regime");
    std::size_t i = 1;
    while (i + 1 < grid_rho.size() && rho > grid_rho[i])
        ++i;
    double t = (static_cast<double>(rho) - grid_rho[i - 1]) / (grid_rho[i] - grid_rho[i - 1]);
    return grid_u[i - 1] + t * (grid_u[i] - grid_u[i - 1]);
}

SecurityParams security_params(unsigned lambda, unsigned rho)
{
    if (lambda < 40 || rho < 40)
        throw domain_error("lambda and rho must be at least 40");
    SecurityParams s{lambda, rho, rho_to_u(rho), 0, false};
    for (std::size_t i = 0; i < grid_lambda.size(); ++i)
        for (std::size_t j = 0; j < grid_rho.size(); ++j)
            if (grid_lambda[i] == lambda && grid_rho[j] == rho) {
                s.group_bits = table[i][j];
                s.u = static_cast<double>(s.group_bits) / lambda;
                s.on_grid = true;
                return s;
            }
    s.group_bits = static_cast<std::size_t>(std::ceil(s.u * lambda - 1e-9));
    return s;
}

std::size_t group_size_for(unsigned lambda, unsigned rho)
{
    return security_params(lambda, rho).group_bits;
}

std::string format_transcript(const std::vector<TranscriptLine> & lines)
{
    std::string out;
    for (const TranscriptLine & l : lines)
        out += hex_line(l) + "\n";
    return out;
}

GenOutput gen_jacobian_bits(std::size_t field_bits, std::span<const std::uint8_t> seed)
{
    if (field_bits < 8)
        throw domain_error("gen_jacobian: field too small");
    std::vector<TranscriptLine> log;
    Bytes sd(seed.begin(), seed.end());
    BigInt p = hash_to_prime(concat(sd, bytes_of("p")), field_bits, {}, observe(log, "p"));
    PrimeField F(p);

    Drawer d{ByteStream(concat(sd, bytes_of("uvw"))), "uvw", log};
    std::vector<BigInt> uc, vc;
    for (int i = 0; i < 3; ++i)
        uc.push_back(d.field(p, "u" + std::to_string(i)));
    uc.push_back(1);
    for (int i = 0; i < 3; ++i)
        vc.push_back(d.field(p, "v" + std::to_string(i)));
    FpPoly u(uc), v(vc);
    FpPoly v2 = poly::mul(F, v, v);

    for (std::size_t tries = 0; tries < 10000; ++tries) {
        std::size_t first = log.size();
        std::vector<BigInt> wc;
        for (int i = 0; i < 4; ++i)
            wc.push_back(d.field(p, "w" + std::to_string(i)));
        wc.push_back(1);
        FpPoly f = poly::add(F, v2, poly::mul(F, u, FpPoly(wc)));
        const char * verdict = nullptr;
        if (!poly::is_squarefree(F, f))
            verdict = "rejected:not-squarefree";
        else if (!poly::is_irreducible(F, f))
            verdict = "rejected:reducible";
        if (verdict) {
            for (std::size_t k = first; k < log.size(); ++k)
                log[k].verdict = verdict;
            continue;
        }
        jacobian::HyperCurve curve(F, f);
        jacobian::MumfordDivisor P{u, poly::rem(F, v, u)};
        if (!jacobian::validate(curve, P))
            throw std::logic_error("gen_jacobian: constructed divisor is invalid");
        return GenOutput{{}, sd, p, std::move(curve), std::move(P), tries, std::move(log)};
    }
    throw resource_error("gen_jacobian: no irreducible f after 10^4 draws");
}

GenOutput gen_jacobian(unsigned lambda, unsigned rho, std::span<const std::uint8_t> seed)
{
    SecurityParams s = security_params(lambda, rho);
    GenOutput g = gen_jacobian_bits((s.group_bits + 2) / 3, seed);
    g.params = s;
    return g;
}

ClassGroupGen gen_classgroup_bits(std::size_t disc_bits, std::span<const std::uint8_t> seed)
{
    std::vector<TranscriptLine> log;
    Bytes sd(seed.begin(), seed.end());
    BigInt q = hash_to_prime(concat(sd, bytes_of("d")), disc_bits,
                             [](const BigInt & c) { return mod(c, 4) == 3; }, observe(log, "d"));
    classgroup::Discriminant d(-q);
    classgroup::QuadForm g = classgroup::sample_element(d, concat(sd, bytes_of("g")));
    return ClassGroupGen{{}, std::move(d), std::move(g), std::move(log)};
}

ClassGroupGen gen_classgroup(unsigned lambda, unsigned rho, std::span<const std::uint8_t> seed)
{
    SecurityParams s = security_params(lambda, rho);
    ClassGroupGen g = gen_classgroup_bits(2 * s.group_bits, seed);
    g.params = s;
    return g;
}

std::optional<KnownOrderCurve> known_order_curve(const PrimeField & F, const FpPoly & c)
{
    FpPoly cr = poly::reduce(F, c);
    if (cr.degree() > 3)
        throw domain_error("known_order_curve: deg c must be at most 3");
    FpPoly f = poly::add(F, FpPoly::monomial(7), poly::mul(F, cr, cr));
    if (!poly::is_squarefree(F, f))
        return std::nullopt;
    jacobian::HyperCurve curve(F, f);
    jacobian::MumfordDivisor D{FpPoly::x(), FpPoly::constant(cr.coeff(0))};
    return KnownOrderCurve{std::move(curve), std::move(D)};
}

BigInt cofactor_S(unsigned long bound)
{
    if (bound < 1)
        throw domain_error("cofactor_S: bound must be positive");
    return lcm_range(bound);
}

unsigned long class_group_cofactor_bound(const classgroup::Discriminant & d)
{
    return d.is_prime_discriminant() ? 1 : 2;
}

} // namespace uog::groupgen
