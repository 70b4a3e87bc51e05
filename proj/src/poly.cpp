#include "uog/poly.hpp"

#include <algorithm>

#include "uog/errors.hpp"

namespace uog {

FpPoly::FpPoly(std::initializer_list<long> coeffs)
{
    for (long c : coeffs)
        c_.emplace_back(c);
    trim();
}

FpPoly FpPoly::monomial(std::size_t deg, const BigInt & c)
{
    std::vector<BigInt> v(deg + 1, 0);
    v[deg] = c;
    return FpPoly(std::move(v));
}

void FpPoly::trim()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

namespace poly {

FpPoly reduce(const PrimeField & F, const FpPoly & a)
{
    std::vector<BigInt> c;
    c.reserve(a.coeffs().size());
    for (const BigInt & x : a.coeffs())
        c.push_back(F.reduce(x));
    return FpPoly(std::move(c));
}

FpPoly add(const PrimeField & F, const FpPoly & a, const FpPoly & b)
{
    std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
    std::vector<BigInt> c(n);
    for (std::size_t i = 0; i < n; ++i)
        c[i] = F.add(a.coeff(i), b.coeff(i));
    return FpPoly(std::move(c));
}

FpPoly sub(const PrimeField & F, const FpPoly & a, const FpPoly & b)
{
    std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
    std::vector<BigInt> c(n);
    for (std::size_t i = 0; i < n; ++i)
        c[i] = F.sub(a.coeff(i), b.coeff(i));
    return FpPoly(std::move(c));
}

FpPoly neg(const PrimeField & F, const FpPoly & a)
{
    std::vector<BigInt> c;
    c.reserve(a.coeffs().size());
    for (const BigInt & x : a.coeffs())
        c.push_back(F.neg(x));
    return FpPoly(std::move(c));
}

FpPoly mul(const PrimeField & F, const FpPoly & a, const FpPoly & b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    const auto & ac = a.coeffs();
    const auto & bc = b.coeffs();
    std::vector<BigInt> c(ac.size() + bc.size() - 1, 0);
    for (std::size_t i = 0; i < ac.size(); ++i) {
        if (ac[i] == 0)
            continue;
        for (std::size_t j = 0; j < bc.size(); ++j)
            mpz_addmul(c[i + j].get_mpz_t(), ac[i].get_mpz_t(), bc[j].get_mpz_t());
    }
    for (BigInt & x : c)
        mpz_mod(x.get_mpz_t(), x.get_mpz_t(), F.modulus().get_mpz_t());
    return FpPoly(std::move(c));
}

FpPoly scale(const PrimeField & F, const FpPoly & a, const BigInt & s)
{
    std::vector<BigInt> c;
    c.reserve(a.coeffs().size());
    for (const BigInt & x : a.coeffs())
        c.push_back(F.mul(x, s));
    return FpPoly(std::move(c));
}

std::pair<FpPoly, FpPoly> divmod(const PrimeField & F, const FpPoly & a, const FpPoly & b)
{
    if (b.is_zero())
        throw domain_error("poly::divmod: division by zero polynomial");
    if (a.degree() < b.degree())
        return {FpPoly{}, a};
    std::vector<BigInt> r = a.coeffs();
    const auto & bc = b.coeffs();
    std::size_t db = bc.size() - 1;
    std::vector<BigInt> q(r.size() - db, 0);
    BigInt inv_lead = F.inv(b.lead());
    const BigInt & p = F.modulus();
    for (std::size_t k = q.size(); k-- > 0;) {
        BigInt & top = r[k + db];
        mpz_mod(top.get_mpz_t(), top.get_mpz_t(), p.get_mpz_t());
        if (top == 0)
            continue;
        BigInt coef = top;
        if (inv_lead != 1)
            coef = F.mul(coef, inv_lead);
        q[k] = coef;
        for (std::size_t j = 0; j < db; ++j)
            mpz_submul(r[k + j].get_mpz_t(), coef.get_mpz_t(), bc[j].get_mpz_t());
        top = 0;
    }
    r.resize(db);
    for (BigInt & x : r)
        mpz_mod(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
    return {FpPoly(std::move(q)), FpPoly(std::move(r))};
}

FpPoly rem(const PrimeField & F, const FpPoly & a, const FpPoly & b)
{
    if (a.degree() < b.degree())
        return a;
    return divmod(F, a, b).second;
}

FpPoly div_exact(const PrimeField & F, const FpPoly & a, const FpPoly & b)
{
    auto [q, r] = divmod(F, a, b);
    if (!r.is_zero())
        throw domain_error("poly::div_exact: nonzero remainder");
    return q;
}

FpPoly monic(const PrimeField & F, const FpPoly & a)
{
    if (a.is_zero() || a.lead() == 1)
        return a;
    return scale(F, a, F.inv(a.lead()));
}

FpPoly derivative(const PrimeField & F, const FpPoly & a)
{
    std::vector<BigInt> c;
    for (std::size_t i = 1; i < a.coeffs().size(); ++i)
        c.push_back(F.mul(a.coeffs()[i], BigInt(static_cast<unsigned long>(i))));
    return FpPoly(std::move(c));
}

BigInt eval(const PrimeField & F, const FpPoly & a, const BigInt & x)
{
    BigInt r = 0;
    for (std::size_t i = a.coeffs().size(); i-- > 0;)
        r = F.add(F.mul(r, x), a.coeffs()[i]);
    return r;
}

FpPoly gcd(const PrimeField & F, const FpPoly & a, const FpPoly & b)
{
    if (a.is_zero() && b.is_zero())
        throw domain_error("poly::gcd: both inputs zero");
    FpPoly x = a, y = b;
    while (!y.is_zero()) {
        FpPoly r = rem(F, x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return monic(F, x);
}

Xgcd xgcd(const PrimeField & F, const FpPoly & a, const FpPoly & b)
{
    FpPoly r0 = a, r1 = b;
    FpPoly s0 = FpPoly::constant(1), s1;
    FpPoly t0, t1 = FpPoly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(F, r0, r1);
        FpPoly s2 = sub(F, s0, mul(F, q, s1));
        FpPoly t2 = sub(F, t0, mul(F, q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero())
        return {r0, s0, t0};
    BigInt li = F.inv(r0.lead());
    return {scale(F, r0, li), scale(F, s0, li), scale(F, t0, li)};
}

FpPoly mulmod(const PrimeField & F, const FpPoly & a, const FpPoly & b, const FpPoly & m)
{
    return rem(F, mul(F, a, b), m);
}

FpPoly powmod(const PrimeField & F, const FpPoly & a, const BigInt & e, const FpPoly & m)
{
    if (e < 0)
        return powmod(F, invmod(F, a, m), -e, m);
    FpPoly base = rem(F, a, m);
    FpPoly r = rem(F, FpPoly::constant(1), m);
    for (std::size_t i = bit_length(e); i-- > 0;) {
        r = mulmod(F, r, r, m);
        if (mpz_tstbit(e.get_mpz_t(), i))
            r = mulmod(F, r, base, m);
    }
    return r;
}

FpPoly compose_mod(const PrimeField & F, const FpPoly & g, const FpPoly & h, const FpPoly & m)
{
    FpPoly r;
    FpPoly hm = rem(F, h, m);
    for (std::size_t i = g.coeffs().size(); i-- > 0;)
        r = rem(F, add(F, mul(F, r, hm), FpPoly::constant(g.coeffs()[i])), m);
    return r;
}

FpPoly invmod(const PrimeField & F, const FpPoly & a, const FpPoly & m)
{
    Xgcd e = xgcd(F, rem(F, a, m), m);
    if (e.g.degree() != 0)
        throw domain_error("poly::invmod: not invertible");
    return rem(F, e.s, m);
}

bool is_squarefree(const PrimeField & F, const FpPoly & f)
{
    if (f.is_zero())
        throw domain_error("poly::is_squarefree: zero polynomial");
    FpPoly d = derivative(F, f);
    if (d.is_zero())
        return f.degree() == 0;
    return gcd(F, f, d).degree() == 0;
}

namespace {

std::vector<unsigned long> prime_divisors(unsigned long n)
{
    std::vector<unsigned long> out;
    for (unsigned long q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0)
                n /= q;
        }
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

/* k-th polynomial in a fixed enumeration of nonzero polynomials (base-p digits of k). */
FpPoly enumerated_poly(const PrimeField & F, unsigned long k)
{
    std::vector<BigInt> c;
    BigInt n = k;
    const BigInt & p = F.modulus();
    while (n > 0) {
        c.push_back(mod(n, p));
        n /= p;
    }
    return FpPoly(std::move(c));
}

void equal_degree_split(const PrimeField & F, const FpPoly & g, int d, std::vector<FpPoly> & out)
{
    if (g.degree() == d) {
        out.push_back(g);
        return;
    }
    BigInt q;
    mpz_pow_ui(q.get_mpz_t(), F.modulus().get_mpz_t(), static_cast<unsigned long>(d));
    BigInt e = (q - 1) / 2;
    /* starts at x, x+1, ... so large fields split after a couple of tries */
    unsigned long p_small = F.modulus().fits_ulong_p() ? F.modulus().get_ui() : 0;
    for (unsigned long k = p_small ? p_small : 1;; ++k) {
        FpPoly a = p_small ? enumerated_poly(F, k) : add(F, FpPoly::x(), FpPoly::constant(k - 1));
        FpPoly b = sub(F, powmod(F, a, e, g), FpPoly::constant(1));
        if (b.is_zero())
            continue;
        FpPoly h = gcd(F, b, g);
        if (h.degree() > 0 && h.degree() < g.degree()) {
            equal_degree_split(F, h, d, out);
            equal_degree_split(F, div_exact(F, g, h), d, out);
            return;
        }
    }
}

} // namespace

bool is_irreducible(const PrimeField & F, const FpPoly & f)
{
    if (f.is_zero())
        throw domain_error("poly::is_irreducible: zero polynomial");
    int n = f.degree();
    if (n <= 0)
        return false;
    if (n == 1)
        return true;
    FpPoly x = FpPoly::x();
    FpPoly xp = powmod(F, x, F.modulus(), f);
    /* frob[k] = x^(p^k) mod f */
    std::vector<FpPoly> frob{rem(F, x, f), xp};
    for (int k = 2; k <= n; ++k)
        frob.push_back(compose_mod(F, frob.back(), xp, f));
    if (!(frob[n] == rem(F, x, f)))
        return false;
    for (unsigned long q : prime_divisors(static_cast<unsigned long>(n))) {
        FpPoly h = sub(F, frob[n / q], x);
        if (h.is_zero() || gcd(F, h, f).degree() != 0)
            return false;
    }
    return true;
}

bool canonical_less(const PrimeField &, const FpPoly & a, const FpPoly & b)
{
    if (a.degree() != b.degree())
        return a.degree() < b.degree();
    for (std::size_t i = a.coeffs().size(); i-- > 0;) {
        int c = cmp(a.coeffs()[i], b.coeffs()[i]);
        if (c != 0)
            return c < 0;
    }
    return false;
}

std::vector<FpPoly> factor_squarefree(const PrimeField & F, const FpPoly & f_in)
{
    if (f_in.is_zero())
        throw domain_error("poly::factor_squarefree: zero polynomial");
    FpPoly f = monic(F, f_in);
    std::vector<FpPoly> out;
    if (f.degree() <= 0)
        return out;
    FpPoly x = FpPoly::x();
    FpPoly rest = f;
    FpPoly h = rem(F, x, rest);
    for (int d = 1; rest.degree() >= 2 * d; ++d) {
        h = powmod(F, h, F.modulus(), rest);
        FpPoly g = gcd(F, sub(F, h, x), rest);
        if (g.degree() > 0) {
            equal_degree_split(F, g, d, out);
            rest = div_exact(F, rest, g);
            h = rem(F, h, rest);
        }
    }
    if (rest.degree() > 0)
        out.push_back(rest);
    std::sort(out.begin(), out.end(),
              [&F](const FpPoly & a, const FpPoly & b) { return canonical_less(F, a, b); });
    return out;
}

Bytes encode_residue(const PrimeField & F, const FpPoly & a, std::size_t n)
{
    Bytes out;
    for (std::size_t i = n; i-- > 0;) {
        Bytes c = F.encode(a.coeff(i));
        out.insert(out.end(), c.begin(), c.end());
    }
    return out;
}

std::optional<FpPoly> sqrt_in_residue_field(const PrimeField & F, const FpPoly & a_in,
                                            const FpPoly & m)
{
    FpPoly a = rem(F, a_in, m);
    if (a.is_zero())
        return a;
    int d = m.degree();
    BigInt q;
    mpz_pow_ui(q.get_mpz_t(), F.modulus().get_mpz_t(), static_cast<unsigned long>(d));
    const FpPoly one = FpPoly::constant(1);
    const FpPoly minus_one = FpPoly::constant(F.modulus() - 1);
    BigInt half = (q - 1) / 2;
    if (!(powmod(F, a, half, m) == one))
        return std::nullopt;

    BigInt t = q - 1;
    unsigned long s = 0;
    while (mpz_even_p(t.get_mpz_t())) {
        t /= 2;
        ++s;
    }
    FpPoly z;
    unsigned long p_small = F.modulus().fits_ulong_p() ? F.modulus().get_ui() : 0;
    /* every element of F_p is a square in even-degree extensions */
    for (unsigned long k = 0;; ++k) {
        if (p_small && k >= p_small)
            z = enumerated_poly(F, k);
        else if (d % 2)
            z = FpPoly::constant(k);
        else
            z = add(F, FpPoly::x(), FpPoly::constant(k));
        z = rem(F, z, m);
        if (!z.is_zero() && powmod(F, z, half, m) == minus_one)
            break;
    }
    FpPoly c = powmod(F, z, t, m);
    FpPoly r = powmod(F, a, (t + 1) / 2, m);
    FpPoly u = powmod(F, a, t, m);
    unsigned long M = s;
    while (!(u == one)) {
        unsigned long i = 0;
        FpPoly u2 = u;
        while (!(u2 == one)) {
            u2 = mulmod(F, u2, u2, m);
            ++i;
        }
        FpPoly b = c;
        for (unsigned long j = 0; j + i + 1 < M; ++j)
            b = mulmod(F, b, b, m);
        r = mulmod(F, r, b, m);
        c = mulmod(F, b, b, m);
        u = mulmod(F, u, c, m);
        M = i;
    }
    FpPoly other = neg(F, r);
    std::size_t n = static_cast<std::size_t>(d);
    if (encode_residue(F, other, n) < encode_residue(F, r, n))
        return other;
    return r;
}

std::optional<FpPoly> sqrt_mod(const PrimeField & F, const FpPoly & f, const FpPoly & u,
                               unsigned signs)
{
    if (!u.is_monic())
        throw domain_error("poly::sqrt_mod: modulus must be monic");
    if (u.degree() == 0)
        return FpPoly{};
    if (u.degree() > 3)
        throw domain_error("poly::sqrt_mod: modulus degree above 3");
    if (!is_squarefree(F, u))
        throw domain_error("poly::sqrt_mod: modulus not squarefree");
    std::vector<FpPoly> factors = factor_squarefree(F, u);
    FpPoly v;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const FpPoly & m = factors[i];
        auto r = sqrt_in_residue_field(F, f, m);
        if (!r)
            return std::nullopt;
        if ((signs >> i) & 1u)
            r = neg(F, *r);
        if (factors.size() == 1)
            return *r;
        FpPoly cof = div_exact(F, u, m);
        FpPoly idem = mul(F, cof, invmod(F, cof, m));
        v = add(F, v, mul(F, *r, idem));
    }
    return rem(F, v, u);
}

FpPoly random_poly(const PrimeField & F, ByteStream & stream, int degree, bool make_monic)
{
    std::vector<BigInt> c;
    for (int i = 0; i < degree; ++i)
        c.push_back(stream.field_element(F.modulus()));
    c.push_back(make_monic ? BigInt(1) : stream.field_element(F.modulus()));
    return FpPoly(std::move(c));
}

} // namespace poly
} // namespace uog
