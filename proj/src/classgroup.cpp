#include "uog/classgroup.hpp"

#include <algorithm>
#include <numeric>

#include "uog/errors.hpp"

namespace uog::classgroup {

Discriminant::Discriminant(BigInt value) : d_(std::move(value))
{
    if (d_ >= 0)
        throw domain_error("discriminant must be negative");
    BigInt r = mod(d_, 4);
    if (r != 0 && r != 1)
        throw domain_error("discriminant must be 0 or 1 mod 4");
}

bool Discriminant::is_prime_discriminant() const
{
    return mod(d_, 4) == 1 && is_probable_prime(-d_);
}

bool is_reduced(const QuadForm & f)
{
    if (f.a <= 0)
        return false;
    if (abs(f.b) > f.a || f.a > f.c)
        return false;
    if ((f.b < 0) && (abs(f.b) == f.a || f.a == f.c))
        return false;
    return true;
}

QuadForm identity(const Discriminant & d)
{
    const BigInt & D = d.value();
    if (mod(D, 4) == 0)
        return {1, 0, -D / 4};
    return {1, 1, (1 - D) / 4};
}

namespace {

/* b into (-a, a] by x -> x + r*y */
void normalize(QuadForm & f)
{
    if (-f.a < f.b && f.b <= f.a)
        return;
    BigInt two_a = 2 * f.a;
    BigInt r = floor_div(f.a - f.b, two_a);
    /* c' = a r^2 + b r + c */
    f.c += r * (f.a * r + f.b);
    f.b += two_a * r;
}

/* a x = b (mod m): returns (mu, nu), all solutions x = mu + nu * n */
std::pair<BigInt, BigInt> solve_linear(const BigInt & a, const BigInt & b, const BigInt & m)
{
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    if (mod(b, g) != 0)
        throw domain_error("compose: unsolvable congruence");
    BigInt nu = m / g;
    BigInt mu = mod(BigInt(b / g) * mod_inverse(mod(BigInt(a / g), nu), nu), nu);
    return {mu, nu};
}

} // namespace

QuadForm reduce(QuadForm f)
{
    if (f.a <= 0)
        throw domain_error("reduce: a must be positive");
    if (f.discriminant() >= 0)
        throw domain_error("reduce: discriminant must be negative");
    normalize(f);
    while (f.a > f.c || (f.a == f.c && f.b < 0)) {
        std::swap(f.a, f.c);
        f.b = -f.b;
        normalize(f);
    }
    return f;
}

QuadForm compose(const QuadForm & x, const QuadForm & y)
{
    if (x.discriminant() != y.discriminant())
        throw domain_error("compose: discriminant mismatch");
    const BigInt & a1 = x.a;
    const BigInt & b1 = x.b;
    const BigInt & c1 = x.c;
    const BigInt & a2 = y.a;
    const BigInt & b2 = y.b;

    BigInt g = (b1 + b2) / 2;
    BigInt h = (b2 - b1) / 2;
    BigInt w;
    mpz_gcd(w.get_mpz_t(), a1.get_mpz_t(), a2.get_mpz_t());
    mpz_gcd(w.get_mpz_t(), w.get_mpz_t(), g.get_mpz_t());
    BigInt s = a1 / w;
    BigInt t = a2 / w;
    BigInt u = g / w;
    BigInt st = s * t;

    auto [mu, nu] = solve_linear(t * u, h * u + s * c1, st);
    auto [lambda, sigma] = solve_linear(t * nu, h - t * mu, s);
    (void)sigma;
    BigInt k = mu + nu * lambda;
    BigInt l = (k * t - h) / s;
    BigInt m = (t * u * k - h * u - c1 * s) / st;

    QuadForm r;
    r.a = st;
    r.b = w * u - (k * t + l * s);
    r.c = k * l - w * m;
    return reduce(std::move(r));
}

QuadForm square(const QuadForm & x)
{
    return compose(x, x);
}

QuadForm invert(const QuadForm & f)
{
    return reduce({f.a, -f.b, f.c});
}

QuadForm pow(const QuadForm & f, const BigInt & n)
{
    if (n < 0)
        return pow(invert(f), -n);
    BigInt D = f.discriminant();
    QuadForm r = identity(Discriminant(D));
    for (std::size_t i = bit_length(n); i-- > 0;) {
        r = square(r);
        if (mpz_tstbit(n.get_mpz_t(), i))
            r = compose(r, f);
    }
    return r;
}

QuadForm from_ab(const BigInt & a, const BigInt & b, const Discriminant & d)
{
    if (a <= 0)
        throw corrupt_encoding("form: a must be positive");
    BigInt num = b * b - d.value();
    BigInt den = 4 * a;
    if (mod(num, den) != 0)
        throw corrupt_encoding("form: 4a does not divide b^2 - Delta");
    return {a, b, num / den};
}

QuadForm sample_element(const Discriminant & d, std::span<const std::uint8_t> seed)
{
    const BigInt & D = d.value();
    std::size_t a_bits = std::max<std::size_t>(3, bit_length(-D) / 2 + 8);
    ByteStream stream(Bytes(seed.begin(), seed.end()));
    BigInt a = hash_to_prime(stream, a_bits, [&D](const BigInt & c) {
        return mpz_odd_p(c.get_mpz_t()) && jacobi(D, c) == 1;
    });
    BigInt r = *sqrt_mod_prime(D, a);
    BigInt b = std::min(r, BigInt(a - r));
    bool want_odd = mpz_odd_p(D.get_mpz_t());
    if (static_cast<bool>(mpz_odd_p(b.get_mpz_t())) != want_odd)
        b = a - b;
    return reduce(from_ab(a, b, d));
}

std::vector<QuadForm> enumerate_class_group(const Discriminant & d)
{
    const BigInt & D = d.value();
    if (-D > 10000000)
        throw resource_error("enumerate_class_group: |Delta| above 10^7");
    long nd = -D.get_si();
    long parity = nd % 2;
    std::vector<QuadForm> out;
    for (long a = 1; 3 * a * a <= nd; ++a) {
        for (long b = -a + 1; b <= a; ++b) {
            if (((b % 2) + 2) % 2 != parity)
                continue;
            long num = b * b + nd;
            if (num % (4 * a) != 0)
                continue;
            long c = num / (4 * a);
            if (c < a || (c == a && b < 0))
                continue;
            long g = std::gcd(std::gcd(a, std::abs(b)), c);
            if (g != 1)
                continue;
            out.push_back({a, b, c});
        }
    }
    return out;
}

std::string to_string(const QuadForm & f)
{
    BigInt D = f.discriminant();
    return "qf1:" + int_to_hex(-D) + ":" + int_to_hex(f.a) + ":" + (f.b < 0 ? "-" : "+") +
           int_to_hex(abs(f.b));
}

QuadForm parse(std::string_view s)
{
    constexpr std::string_view tag = "qf1:";
    if (s.substr(0, tag.size()) != tag)
        throw corrupt_encoding("form: missing qf1 tag");
    s.remove_prefix(tag.size());
    auto c1 = s.find(':');
    if (c1 == std::string_view::npos)
        throw corrupt_encoding("form: missing field separator");
    auto c2 = s.find(':', c1 + 1);
    if (c2 == std::string_view::npos)
        throw corrupt_encoding("form: missing field separator");
    std::string_view bpart = s.substr(c2 + 1);
    if (bpart.empty() || (bpart[0] != '+' && bpart[0] != '-') ||
        (bpart.size() > 1 && bpart[1] == '-'))
        throw corrupt_encoding("form: b needs an explicit sign");
    BigInt absd = int_from_hex(s.substr(0, c1));
    BigInt a = int_from_hex(s.substr(c1 + 1, c2 - c1 - 1));
    BigInt bmag = int_from_hex(bpart.substr(1));
    if (bpart[0] == '-' && bmag == 0)
        throw corrupt_encoding("form: negative zero");
    BigInt b = bpart[0] == '-' ? BigInt(-bmag) : bmag;
    if (absd <= 0)
        throw corrupt_encoding("form: discriminant must be negative");
    Discriminant d = [&] {
        try {
            return Discriminant(-absd);
        } catch (const domain_error & e) {
            throw corrupt_encoding(e.what());
        }
    }();
    QuadForm f = from_ab(a, b, d);
    if (!is_reduced(f))
        throw corrupt_encoding("form: not reduced");
    BigInt g;
    mpz_gcd(g.get_mpz_t(), f.a.get_mpz_t(), f.b.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), f.c.get_mpz_t());
    if (g != 1)
        throw corrupt_encoding("form: not primitive");
    return f;
}

QuadForm parse(std::string_view s, const Discriminant & d)
{
    QuadForm f = parse(s);
    if (f.discriminant() != d.value())
        throw corrupt_encoding("form: discriminant mismatch");
    return f;
}

} // namespace uog::classgroup
