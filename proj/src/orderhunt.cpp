#include "uog/orderhunt.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "uog/errors.hpp"

namespace uog::orderhunt {

using group::CountingGroup;
using group::Element;
using group::Group;
using group::GroupPtr;

namespace {

constexpr unsigned long trial_bound = 1ul << 12;

const std::vector<unsigned long> & small_primes()
{
    static const std::vector<unsigned long> p = primes_up_to(trial_bound);
    return p;
}

/* ---- Pollard-Brent over mpz --------------------------------------------- */

std::optional<BigInt> brent_split(const BigInt & n, unsigned long c, std::uint64_t max_iter)
{
    BigInt y = 2, x, q = 1, g = 1, ys;
    const std::uint64_t m = 128;
    std::uint64_t r = 1, iters = 0;
    auto f = [&](const BigInt & v) { return BigInt((v * v + c) % n); };
    while (g == 1) {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i)
            y = f(y);
        std::uint64_t k = 0;
        while (k < r && g == 1) {
            ys = y;
            for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                y = f(y);
                q = q * abs(x - y) % n;
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += m;
        }
        r *= 2;
        iters += r;
        if (iters > max_iter)
            return std::nullopt;
    }
    if (g == n) {
        do {
            ys = f(ys);
            BigInt t = abs(x - ys);
            mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    if (g == n)
        return std::nullopt;
    return g;
}

/* ---- native 64-bit factoring for the Monte Carlo ------------------------ */

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m)
{
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 a, u64 e, u64 m)
{
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1)
            r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

/* deterministic Miller-Rabin for n < 2^64 */
bool prime64(u64 n)
{
    if (n < 2)
        return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0)
            return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while (!(d & 1)) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool comp = true;
        for (int r = 1; r < s && comp; ++r) {
            x = mulmod(x, x, n);
            comp = x != n - 1;
        }
        if (comp)
            return false;
    }
    return true;
}

u64 gcd64(u64 a, u64 b)
{
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

/* 0 if no split within the iteration cap */
u64 brent64(u64 n, u64 c, u64 max_iter)
{
    u64 y = 2, x = 0, q = 1, g = 1, ys = 0, r = 1, iters = 0;
    const u64 m = 128;
    auto f = [&](u64 v) {
        u64 s = mulmod(v, v, n) + c;
        return s >= n || s < c ? s - n : s;
    };
    while (g == 1) {
        x = y;
        for (u64 i = 0; i < r; ++i)
            y = f(y);
        u64 k = 0;
        while (k < r && g == 1) {
            ys = y;
            for (u64 i = 0; i < std::min(m, r - k); ++i) {
                y = f(y);
                q = mulmod(q, x > y ? x - y : y - x, n);
            }
            g = gcd64(q, n);
            k += m;
        }
        r *= 2;
        iters += r;
        if (iters > max_iter)
            return 0;
    }
    if (g == n) {
        do {
            ys = f(ys);
            g = gcd64(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g == n ? 0 : g;
}

/* prime factors with multiplicity; false if Pollard gave up */
bool factor64(u64 n, std::vector<u64> & out)
{
    for (unsigned long p : small_primes()) {
        if (static_cast<u64>(p) * p > n)
            break;
        while (n % p == 0) {
            out.push_back(p);
            n /= p;
        }
    }
    std::vector<u64> stack;
    if (n > 1)
        stack.push_back(n);
    while (!stack.empty()) {
        u64 m = stack.back();
        stack.pop_back();
        if (prime64(m)) {
            out.push_back(m);
            continue;
        }
        u64 d = 0;
        for (u64 c = 1; c < 8 && !d; ++c)
            d = brent64(m, c, 1ull << 24);
        if (!d)
            return false;
        stack.push_back(d);
        stack.push_back(m / d);
    }
    return true;
}

bool semismooth_from_factors(std::vector<double> logs, double logx, double u)
{
    if (logs.empty())
        return true;
    std::sort(logs.rbegin(), logs.rend());
    if (logs[0] >= 2 * logx / u)
        return false;
    return logs.size() < 2 || logs[1] <= logx / u;
}

/* ---- order helpers ------------------------------------------------------ */

struct Counter {
    std::shared_ptr<CountingGroup> g;
    std::uint64_t budget;

    bool exhausted() const { return g->ops() > budget; }
};

std::string key_of(const Group & G, const Element & e)
{
    Bytes b = G.encode(e);
    return std::string(b.begin(), b.end());
}

BigInt minimize(const Group & G, const Element & a, BigInt n)
{
    for (auto & [p, e] : factor(n)) {
        (void)e;
        while (mod(n, p) == 0 && G.is_identity(G.pow(a, n / p)))
            n /= p;
    }
    return n;
}

/* order of g, known to divide prod p^e over fs[lo, hi) */
BigInt smooth_order(const Group & G, const Element & g, const std::vector<std::pair<BigInt, unsigned>> & fs,
                    std::size_t lo, std::size_t hi)
{
    if (G.is_identity(g) || lo == hi)
        return 1;
    if (hi - lo == 1) {
        BigInt order = 1;
        Element x = g;
        while (!G.is_identity(x)) {
            x = G.pow(x, fs[lo].first);
            order *= fs[lo].first;
        }
        return order;
    }
    std::size_t mid = (lo + hi) / 2;
    BigInt left = 1, right = 1;
    for (std::size_t i = lo; i < hi; ++i) {
        BigInt pe;
        mpz_pow_ui(pe.get_mpz_t(), fs[i].first.get_mpz_t(), fs[i].second);
        (i < mid ? left : right) *= pe;
    }
    return smooth_order(G, G.pow(g, right), fs, lo, mid) * smooth_order(G, G.pow(g, left), fs, mid, hi);
}

HuntResult finish(const Counter & c, HuntResult r)
{
    r.group_ops = c.g->ops();
    r.inversions = c.g->inversions();
    return r;
}

} // namespace

/* ---- factoring ---------------------------------------------------------- */

std::vector<std::pair<BigInt, unsigned>> factor(const BigInt & n0)
{
    if (n0 < 1)
        throw domain_error("factor: n must be positive");
    std::map<BigInt, unsigned> out;
    BigInt n = n0;
    for (unsigned long p : small_primes()) {
        if (BigInt(p) * p > n)
            break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            ++out[p];
            n /= p;
        }
    }
    std::vector<BigInt> stack;
    if (n > 1)
        stack.push_back(n);
    while (!stack.empty()) {
        BigInt m = stack.back();
        stack.pop_back();
        if (is_probable_prime(m)) {
            ++out[m];
            continue;
        }
        SqrtResult s = int_sqrt(m);
        if (s.exact) {
            stack.push_back(s.root);
            stack.push_back(s.root);
            continue;
        }
        std::optional<BigInt> d;
        for (unsigned long c = 1; !d; ++c) {
            if (c > 64)
                throw resource_error("factor: Pollard-Brent did not split " + m.get_str());
            d = brent_split(m, c, 1ull << 26);
        }
        stack.push_back(*d);
        stack.push_back(m / *d);
    }
    return {out.begin(), out.end()};
}

unsigned long smoothness_bound(const BigInt & M, double u)
{
    if (M < 1 || u <= 0)
        throw domain_error("smoothness_bound: need M >= 1 and u > 0");
    if (M == 1)
        return 2;
    double l = std::ceil(std::exp2(log2_abs(M) / u) - 1e-9);
    return std::max(2ul, static_cast<unsigned long>(l));
}

bool verify_order(const Group & G, const Element & a, const BigInt & n)
{
    if (n < 1 || !G.is_identity(G.pow(a, n)))
        return false;
    for (auto & [p, e] : factor(n)) {
        (void)e;
        if (G.is_identity(G.pow(a, n / p)))
            return false;
    }
    return true;
}

/* ---- BSGS --------------------------------------------------------------- */

HuntResult bsgs_order(const GroupPtr & G0, const Element & a, const HuntConfig & cfg)
{
    if (cfg.M < 1)
        throw domain_error("bsgs_order: M must be positive");
    Counter c{std::make_shared<CountingGroup>(G0), cfg.budget};
    const Group & G = *c.g;
    HuntResult r;

    BigInt span = cfg.negation ? BigInt(cfg.M / 2 + 1) : cfg.M;
    BigInt mm = int_sqrt(span).root + 1;
    if (mm > cfg.memory_cap)
        throw resource_error("bsgs_order: baby-step table exceeds the memory cap");
    std::uint64_t m = mm.get_ui();

    /* baby steps a^1 .. a^m: j, and for negation whether a^j is the inverse of its key */
    std::unordered_map<std::string, std::pair<std::uint64_t, bool>> table;
    table.reserve(m);
    Element cur = a;
    for (std::uint64_t j = 1; j <= m; ++j) {
        if (G.is_identity(cur)) {
            r.status = HuntStatus::found;
            r.order = j;
            r.table_size = table.size();
            return finish(c, r);
        }
        std::string k = key_of(G, cur);
        bool flip = false;
        if (cfg.negation) {
            std::string k2 = key_of(G, G.inverse(cur));
            if (k2 < k) {
                k.swap(k2);
                flip = true;
            }
        }
        /* plain mode covers (t - m, t], so a^m itself stays out */
        if (cfg.negation || j < m)
            table.emplace(std::move(k), std::make_pair(j, flip));
        if (j < m)
            cur = G.op(cur, a);
        if (c.exhausted())
            return finish(c, r);
    }
    r.table_size = table.size();

    /* giant steps t = s, 2s, ...; windows (t - m, t] or [t - m, t + m] */
    std::uint64_t s = cfg.negation ? 2 * m : m;
    Element step = cfg.negation ? G.op(cur, cur) : cur;
    Element g = step;
    std::optional<BigInt> hit;
    for (BigInt t = s; t <= cfg.M + s; t += s) {
        ++r.giant_steps;
        if (G.is_identity(g)) {
            hit = t;
            break;
        }
        std::string k = key_of(G, g);
        bool flip = false;
        if (cfg.negation) {
            std::string k2 = key_of(G, G.inverse(g));
            if (k2 < k) {
                k.swap(k2);
                flip = true;
            }
        }
        auto it = table.find(k);
        if (it != table.end()) {
            auto [j, bflip] = it->second;
            hit = flip == bflip ? BigInt(t - j) : BigInt(t + j);
            break;
        }
        g = G.op(g, step);
        if (c.exhausted())
            return finish(c, r);
    }
    if (!hit)
        return finish(c, r);
    if (!G.is_identity(G.pow(a, *hit)))
        throw std::logic_error("bsgs_order: collision is not a multiple of the order");
    r.order = minimize(G, a, *hit);
    r.status = HuntStatus::found;
    return finish(c, r);
}

/* ---- primorial steps ---------------------------------------------------- */

HuntResult primorial_steps(const GroupPtr & G0, const Element & a, const HuntConfig & cfg)
{
    if (cfg.M < 1)
        throw domain_error("primorial_steps: M must be positive");
    Counter c{std::make_shared<CountingGroup>(G0), cfg.budget};
    const Group & G = *c.g;
    HuntResult r;
    r.L = smoothness_bound(cfg.M, cfg.u);

    std::vector<std::pair<BigInt, unsigned>> efactors;
    BigInt E = 1;
    for (unsigned long p : primes_up_to(r.L)) {
        BigInt pe = p;
        unsigned e = 1;
        while (pe * p <= cfg.M) {
            pe *= p;
            ++e;
        }
        if (pe > cfg.M)
            continue; /* p > M: contributes nothing */
        efactors.push_back({p, e});
        E *= pe;
    }
    Element beta = G.pow(a, E);

    BigInt rough;
    if (G.is_identity(beta)) {
        rough = 1;
    } else {
        /* primorial P and width b ~ L / sqrt(phi(P)/P), a multiple of P */
        double L = static_cast<double>(r.L);
        unsigned long P = 1;
        double ratio = 1;
        for (auto & [p, e] : efactors) {
            (void)e;
            unsigned long q = p.get_ui();
            double nr = ratio * (1 - 1.0 / q);
            if (static_cast<double>(P) * q > L / std::sqrt(nr))
                break;
            P *= q;
            ratio = nr;
        }
        std::uint64_t b = P * std::max<std::uint64_t>(1, std::llround(L / std::sqrt(ratio) / P));
        if (b * ratio > static_cast<double>(cfg.memory_cap))
            throw resource_error("primorial_steps: baby-step table exceeds the memory cap");

        std::vector<std::uint64_t> js;
        for (std::uint64_t j = 1; j < b; ++j)
            if (std::gcd(j, static_cast<std::uint64_t>(P)) == 1)
                js.push_back(j);
        std::map<std::uint64_t, Element> steps;
        for (std::size_t i = 1; i < js.size(); ++i) {
            std::uint64_t d = js[i] - js[i - 1];
            if (!steps.count(d))
                steps.emplace(d, G.pow(beta, d));
        }

        std::unordered_map<std::string, std::uint64_t> table;
        table.reserve(js.size());
        Element cur = beta;
        std::optional<BigInt> hit;
        for (std::size_t i = 0; i < js.size(); ++i) {
            if (i)
                cur = G.op(cur, steps.at(js[i] - js[i - 1]));
            if (G.is_identity(cur)) {
                hit = js[i];
                break;
            }
            table.emplace(key_of(G, cur), js[i]);
            if (c.exhausted())
                return finish(c, r);
        }
        r.table_size = table.size();
        if (!hit) {
            Element step = G.pow(beta, b);
            Element g = step;
            for (BigInt t = b; t <= cfg.M + b; t += b) {
                ++r.giant_steps;
                auto it = table.find(key_of(G, g));
                if (it != table.end()) {
                    hit = t - it->second;
                    break;
                }
                g = G.op(g, step);
                if (c.exhausted())
                    return finish(c, r);
            }
        }
        if (!hit)
            return finish(c, r);
        rough = *hit;
    }
    r.rough_order = rough;
    Element gamma = G.pow(a, rough);
    BigInt order = rough * smooth_order(G, gamma, efactors, 0, efactors.size());
    if (!verify_order(G, a, order))
        throw std::logic_error("primorial_steps: recovered order failed verification");
    r.order = order;
    r.status = HuntStatus::found;
    return finish(c, r);
}

/* ---- semismoothness ----------------------------------------------------- */

bool is_semismooth(const BigInt & x, double u)
{
    if (x < 1)
        throw domain_error("is_semismooth: x must be positive");
    std::vector<double> logs;
    for (auto & [p, e] : factor(x))
        for (unsigned i = 0; i < e; ++i)
            logs.push_back(log2_abs(p));
    return semismooth_from_factors(std::move(logs), log2_abs(x), u);
}

SemismoothEstimate semismooth_mc(double u, std::size_t bits, std::uint64_t trials,
                                 std::span<const std::uint8_t> seed, unsigned threads)
{
    if (bits < 2 || bits > 96)
        throw domain_error("semismooth_mc: bits must be in [2, 96]");
    if (u <= 1)
        throw domain_error("semismooth_mc: u must exceed 1");
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    Bytes sd(seed.begin(), seed.end());

    struct Part {
        std::uint64_t hits = 0, redraws = 0;
    };
    std::vector<Part> parts(threads);
    auto work = [&](unsigned t) {
        Part & part = parts[t];
        for (std::uint64_t i = t; i < trials; i += threads) {
            ByteStream s(concat(sd, to_bytes_be(i, 8)));
            for (;;) {
                BigInt x = s.uniform_bits(bits);
                mpz_setbit(x.get_mpz_t(), bits - 1);
                std::vector<double> logs;
                bool ok = true;
                if (bits <= 64) {
                    std::vector<u64> fs;
                    ok = factor64(mpz_get_ui(x.get_mpz_t()), fs);
                    for (u64 p : fs)
                        logs.push_back(std::log2(static_cast<double>(p)));
                } else {
                    try {
                        for (auto & [p, e] : factor(x))
                            for (unsigned k = 0; k < e; ++k)
                                logs.push_back(log2_abs(p));
                    } catch (const resource_error &) {
                        ok = false;
                    }
                }
                if (!ok) {
                    ++part.redraws;
                    continue;
                }
                part.hits += semismooth_from_factors(std::move(logs), log2_abs(x), u);
                break;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t)
        pool.emplace_back(work, t);
    work(0);
    for (auto & th : pool)
        th.join();

    SemismoothEstimate est{u, bits, trials, 0, 0, 0, 0, 0};
    for (const Part & p : parts) {
        est.hits += p.hits;
        est.redraws += p.redraws;
    }
    double n = static_cast<double>(trials), ph = est.hits / n, z = 1.959963984540054;
    est.estimate = ph;
    double den = 1 + z * z / n;
    double centre = (ph + z * z / (2 * n)) / den;
    double half = z * std::sqrt(ph * (1 - ph) / n + z * z / (4 * n * n)) / den;
    est.lo = centre - half;
    est.hi = centre + half;
    return est;
}

/* ---- weakness ----------------------------------------------------------- */

double log2_semismooth_probability(double u)
{
    /* (u, log2 G(1/u, 2/u)); the duplicated u = 5.0 row is left out */
    static const std::vector<std::pair<double, double>> nodes = {
        {2.0, 0.0},
        {2.1, std::log2(0.9488)},
        {2.9, std::log2(0.5038)},
        {3.0, std::log2(0.4473)},
        {6.0, std::log2(1.092e-3)},
        {10.0, std::log2(5.382e-9)},
        {12.0, std::log2(4.255e-12)},
        {16.0, std::log2(6.534e-19)},
        {20.0, std::log2(2.416e-26)},
        {22.5, -100.0},
        {26.5, -128.0},
    };
    if (u <= nodes.front().first)
        return 0;
    auto x = [](double v) { return v * std::log(v); };
    std::size_t i = 1;
    while (i + 1 < nodes.size() && u > nodes[i].first)
        ++i;
    auto [u0, g0] = nodes[i - 1];
    auto [u1, g1] = nodes[i];
    double t = (x(u) - x(u0)) / (x(u1) - x(u0));
    return g0 + t * (g1 - g0);
}

WeaknessReport weakness_probability(unsigned lambda, unsigned rho, std::size_t group_bits)
{
    if (lambda == 0)
        throw domain_error("weakness_probability: lambda must be positive");
    WeaknessReport w;
    w.u = static_cast<double>(group_bits) / lambda;
    w.log2_prob = log2_semismooth_probability(w.u);
    w.meets_rho = w.log2_prob <= -static_cast<double>(rho) + 1e-9;
    return w;
}

} // namespace uog::orderhunt
