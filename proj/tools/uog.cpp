/*
 * uog: command-line front end. Output is key=value, one record per line
 * (hunt and estimate-semismooth print a single line). Exit codes: 0 ok,
 * 1 negative result (proof rejected, budget exhausted), 2 usage or bad
 * input, 3 internal or resource error.
 */
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "uog/errors.hpp"
#include "uog/formcodec.hpp"
#include "uog/groupgen.hpp"
#include "uog/orderhunt.hpp"
#include "uog/poe.hpp"
#ifdef UOG_HAVE_TEST_GROUPS
#include "uog/testgroups.hpp"
#endif

using namespace uog;

namespace {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool quiet = false;

/* key=value record; printed as lines or as one space-separated line */
class Record {
  public:
    template <class T> Record & add(const std::string & k, const T & v)
    {
        std::ostringstream os;
        os << v;
        kv_.emplace_back(k, os.str());
        return *this;
    }
    std::string lines() const
    {
        std::string s;
        for (auto & [k, v] : kv_)
            s += k + "=" + v + "\n";
        return s;
    }
    std::string single() const
    {
        std::string s;
        for (auto & [k, v] : kv_)
            s += (s.empty() ? "" : " ") + k + "=" + v;
        return s + "\n";
    }

  private:
    std::vector<std::pair<std::string, std::string>> kv_;
};

void emit(const std::string & s)
{
    if (!quiet)
        std::fwrite(s.data(), 1, s.size(), stdout);
}

/* decimal, or hex after "0x"; optional leading '-' */
BigInt parse_int(const std::string & s, const char * what)
{
    std::string t = s;
    bool neg = !t.empty() && t[0] == '-';
    if (neg)
        t.erase(0, 1);
    int base = 10;
    if (t.starts_with("0x")) {
        t.erase(0, 2);
        base = 16;
    }
    BigInt n;
    if (t.empty() || n.set_str(t, base) != 0)
        throw usage_error(std::string("bad integer for ") + what + ": " + s);
    return neg ? BigInt(-n) : n;
}

/* "0x..." is hex bytes, anything else is taken as UTF-8 */
Bytes parse_seed(const std::string & s)
{
    if (s.starts_with("0x")) {
        try {
            return from_hex(s.substr(2));
        } catch (const std::exception &) {
            throw usage_error("bad hex seed");
        }
    }
    return bytes_of(s);
}

Bytes parse_hex(const std::string & s, const char * what)
{
    try {
        return from_hex(s);
    } catch (const std::exception &) {
        throw usage_error(std::string("bad hex for ") + what);
    }
}

group::GroupPtr parse_group(const std::string & desc)
{
    try {
        return group::from_descriptor(desc);
    } catch (const corrupt_encoding & e) {
        throw usage_error(std::string("bad group descriptor: ") + e.what());
    } catch (const domain_error & e) {
        throw usage_error(std::string("bad group descriptor: ") + e.what());
    }
}

group::Element parse_element(const group::Group & G, const std::string & hex, const char * what)
{
    Bytes b = parse_hex(hex, what);
    try {
        return G.decode(b);
    } catch (const corrupt_encoding & e) {
        throw usage_error(std::string("bad element for ") + what + ": " + e.what());
    } catch (const domain_error & e) {
        throw usage_error(std::string("bad element for ") + what + ": " + e.what());
    }
}

/* "1.5", "3", or "7/2" */
double parse_rational(const std::string & s)
{
    try {
        auto slash = s.find('/');
        std::size_t used = 0;
        if (slash == std::string::npos) {
            double v = std::stod(s, &used);
            if (used == s.size())
                return v;
        } else {
            double num = std::stod(s.substr(0, slash), &used);
            double den = std::stod(s.substr(slash + 1));
            if (den != 0)
                return num / den;
        }
    } catch (const std::exception &) {
    }
    throw usage_error("bad rational: " + s);
}

std::string read_stdin()
{
    return std::string((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
}

std::string trim(std::string s)
{
    auto ws = [](char c) { return c == ' ' || c == '\n' || c == '\r' || c == '\t'; };
    while (!s.empty() && ws(s.back()))
        s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && ws(s[i]))
        ++i;
    return s.substr(i);
}

/* the value for `key` if the input is a record, otherwise the whole input */
std::string value_of(const std::string & input, const std::string & key)
{
    std::istringstream is(input);
    std::string line;
    while (std::getline(is, line))
        if (line.starts_with(key + "="))
            return trim(line.substr(key.size() + 1));
    return trim(input);
}

std::string fmt_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

/* ---- subcommands -------------------------------------------------------- */

struct GenOpts {
    unsigned lambda = 0, rho = 0;
    std::string seed, kind = "jacobian", out;
};

int cmd_gen(const GenOpts & o)
{
    if (o.kind != "jacobian" && o.kind != "classgroup")
        throw usage_error("--kind must be jacobian or classgroup");
    Bytes seed = parse_seed(o.seed);
    groupgen::SecurityParams sp;
    try {
        sp = groupgen::security_params(o.lambda, o.rho);
    } catch (const domain_error & e) {
        throw usage_error(e.what());
    }
    Record r;
    r.add("kind", o.kind).add("lambda", sp.lambda).add("rho", sp.rho).add("u", fmt_double(sp.u))
        .add("group_bits", sp.group_bits).add("seed", to_hex(seed));
    std::vector<groupgen::TranscriptLine> transcript;
    if (o.kind == "jacobian") {
        groupgen::GenOutput g = groupgen::gen_jacobian(o.lambda, o.rho, seed);
        group::GroupPtr G = group::jacobian_group(g.curve);
        r.add("p", g.p).add("group", G->descriptor())
            .add("generator", to_hex(G->encode(G->element(g.P)))).add("rejections", g.rejections);
        transcript = std::move(g.transcript);
    } else {
        groupgen::ClassGroupGen g = groupgen::gen_classgroup(o.lambda, o.rho, seed);
        group::GroupPtr G = group::class_group(g.d);
        r.add("disc", g.d.value()).add("group", G->descriptor())
            .add("generator", to_hex(G->encode(G->element(g.generator))));
        transcript = std::move(g.transcript);
    }
    std::string ts = groupgen::format_transcript(transcript);
    r.add("transcript_lines", transcript.size()).add("transcript_sha256", to_hex(sha256(bytes_of(ts))));
    std::string body = r.lines();
    if (!o.out.empty()) {
        std::ofstream f(o.out, std::ios::binary), t(o.out + ".transcript", std::ios::binary);
        f << body;
        t << ts;
        if (!f || !t)
            throw resource_error("cannot write " + o.out);
        emit(body + "out=" + o.out + "\ntranscript=" + o.out + ".transcript\n");
    } else {
        emit(body);
    }
    return 0;
}

int cmd_params(unsigned lambda, unsigned rho)
{
    groupgen::SecurityParams sp;
    try {
        sp = groupgen::security_params(lambda, rho);
    } catch (const domain_error & e) {
        throw usage_error(e.what());
    }
    orderhunt::WeaknessReport w = orderhunt::weakness_probability(lambda, rho, sp.group_bits);
    Record r;
    r.add("lambda", sp.lambda).add("rho", sp.rho).add("u", fmt_double(sp.u)).add("group_bits", sp.group_bits)
        .add("on_grid", sp.on_grid ? 1 : 0).add("log2_weak_probability", fmt_double(w.log2_prob))
        .add("class_group_disc_bits", 2 * sp.group_bits).add("jacobian_field_bits", (sp.group_bits + 2) / 3);
    emit(r.lines());
    return 0;
}

int cmd_compress(const std::string & disc, const std::string & sample)
{
    classgroup::QuadForm f;
    if (!sample.empty()) {
        if (disc.empty())
            throw usage_error("--sample needs --disc");
        classgroup::Discriminant d(parse_int(disc, "--disc"));
        f = classgroup::sample_element(d, parse_seed(sample));
    } else {
        std::string in = value_of(read_stdin(), "form");
        try {
            f = disc.empty() ? classgroup::parse(in)
                             : classgroup::parse(in, classgroup::Discriminant(parse_int(disc, "--disc")));
        } catch (const corrupt_encoding & e) {
            throw usage_error(std::string("bad form: ") + e.what());
        }
    }
    formcodec::CompressedForm cf = formcodec::compress(f);
    Bytes b = formcodec::serialize(cf);
    Record r;
    r.add("form", classgroup::to_string(f)).add("compressed", to_hex(b))
        .add("payload_bits", formcodec::payload_bits(cf))
        .add("disc_bits", bit_length(f.discriminant()));
    emit(r.lines());
    return 0;
}

int cmd_decompress(const std::string & disc)
{
    if (disc.empty())
        throw usage_error("decompress needs --disc");
    classgroup::Discriminant d = [&] {
        try {
            return classgroup::Discriminant(parse_int(disc, "--disc"));
        } catch (const domain_error & e) {
            throw usage_error(e.what());
        }
    }();
    Bytes b = parse_hex(value_of(read_stdin(), "compressed"), "compressed form");
    classgroup::QuadForm f;
    try {
        f = formcodec::decompress(formcodec::deserialize(b), d);
    } catch (const corrupt_encoding & e) {
        throw usage_error(std::string("bad compressed form: ") + e.what());
    }
    emit(Record().add("form", classgroup::to_string(f)).lines());
    return 0;
}

struct HuntOpts {
    std::string group, element, sample, u = "4", algo = "primorial";
    unsigned bound = 0;
    std::uint64_t budget = 1ull << 32;
    std::size_t memory_cap = 1u << 24;
    bool negation = false;
};

int cmd_hunt(const HuntOpts & o)
{
    if (o.algo != "bsgs" && o.algo != "primorial")
        throw usage_error("--algo must be bsgs or primorial");
    if (o.bound == 0 || o.bound > 4096)
        throw usage_error("--bound must be in 1..4096 bits");
    if (o.element.empty() == o.sample.empty())
        throw usage_error("give exactly one of --element, --sample");
    group::GroupPtr G = parse_group(o.group);
    group::Element a = o.sample.empty() ? parse_element(*G, o.element, "--element") : G->sample(parse_seed(o.sample));
    orderhunt::HuntConfig cfg;
    cfg.M = BigInt(1) << o.bound;
    cfg.u = parse_rational(o.u);
    if (!(cfg.u >= 1))
        throw usage_error("--u must be at least 1");
    cfg.budget = o.budget;
    cfg.memory_cap = o.memory_cap;
    cfg.negation = o.negation;
    orderhunt::HuntResult h = o.algo == "bsgs" ? orderhunt::bsgs_order(G, a, cfg) : orderhunt::primorial_steps(G, a, cfg);
    bool found = h.status == orderhunt::HuntStatus::found;
    Record r;
    r.add("algo", o.algo).add("status", found ? "found" : "budget_exhausted")
        .add("order", found ? h.order->get_str() : std::string("none")).add("group_ops", h.group_ops)
        .add("inversions", h.inversions).add("table_size", h.table_size).add("giant_steps", h.giant_steps);
    if (o.algo == "primorial")
        r.add("L", h.L).add("rough_order", h.rough_order);
    emit(r.single());
    return found ? 0 : 1;
}

int cmd_estimate(const std::string & u_text, unsigned bits, std::uint64_t trials, const std::string & seed,
                 unsigned threads)
{
    double u = parse_rational(u_text);
    if (!(u > 1))
        throw usage_error("--u must exceed 1");
    if (bits < 8 || bits > 256)
        throw usage_error("--bits must be in 8..256");
    if (trials == 0)
        throw usage_error("--trials must be positive");
    orderhunt::SemismoothEstimate e = orderhunt::semismooth_mc(u, bits, trials, parse_seed(seed), threads);
    Record r;
    r.add("u", fmt_double(u)).add("bits", bits).add("trials", e.trials).add("hits", e.hits)
        .add("estimate", fmt_double(e.estimate)).add("lo", fmt_double(e.lo)).add("hi", fmt_double(e.hi))
        .add("redraws", e.redraws);
    double table = std::exp2(orderhunt::log2_semismooth_probability(u));
    r.add("asymptotic", fmt_double(table));
    emit(r.single());
    return 0;
}

struct PoeOpts {
    std::string group, base, base_seed, exp, claim, q, ell;
    unsigned cofactor = 0; /* S = lcm(1..cofactor); 0 is plain PoE */
    std::size_t lambda = 128;
};

struct PoeInputs {
    group::GroupPtr G;
    poe::Statement st;
    BigInt S = 1;
};

PoeInputs poe_inputs(const PoeOpts & o, bool need_claim)
{
    PoeInputs in;
    in.G = parse_group(o.group);
    if (o.base.empty() == o.base_seed.empty())
        throw usage_error("give exactly one of --base, --base-seed");
    in.st.base = o.base.empty() ? in.G->sample(parse_seed(o.base_seed)) : parse_element(*in.G, o.base, "--base");
    if (o.exp.empty())
        throw usage_error("--exp is required");
    in.st.x = parse_int(o.exp, "--exp");
    if (in.st.x < 0)
        throw usage_error("--exp must be non-negative");
    if (o.lambda < 16 || o.lambda > 1024)
        throw usage_error("--lambda must be in 16..1024");
    if (o.cofactor > 0)
        in.S = groupgen::cofactor_S(o.cofactor);
    if (!o.claim.empty())
        in.st.claim = parse_element(*in.G, o.claim, "--claim");
    else if (need_claim)
        throw usage_error("--claim is required");
    else
        in.st.claim = in.G->pow(in.G->pow(in.st.base, in.st.x), in.S);
    return in;
}

Record statement_record(const PoeInputs & in)
{
    Record r;
    r.add("group", in.G->descriptor()).add("base", to_hex(in.G->encode(in.st.base))).add("exp", in.st.x)
        .add("claim", to_hex(in.G->encode(in.st.claim)));
    return r;
}

int cmd_poe_prove(const PoeOpts & o)
{
    PoeInputs in = poe_inputs(o, false);
    poe::Proof pf = poe::prove_fs(*in.G, in.st, o.lambda, in.S, o.cofactor);
    Record r = statement_record(in);
    r.add("cofactor", o.cofactor).add("lambda", o.lambda).add("ell", pf.ell).add("q", to_hex(in.G->encode(pf.Q)));
    emit(r.lines());
    return 0;
}

int cmd_poe_verify(const PoeOpts & o)
{
    PoeInputs in = poe_inputs(o, true);
    if (o.q.empty())
        throw usage_error("--q is required");
    poe::Proof pf;
    pf.Q = parse_element(*in.G, o.q, "--q");
    pf.S = in.S;
    poe::Verdict v;
    if (o.ell.empty()) {
        pf.ell = poe::fiat_shamir_challenge(poe::statement_bytes(*in.G, in.st, in.S), o.lambda,
                                            in.S != 1 ? o.cofactor : 0);
        v = poe::verify_fs(*in.G, in.st, pf, o.lambda, o.cofactor);
    } else {
        /* interactive: the challenge is taken as given */
        pf.ell = parse_int(o.ell, "--ell");
        v = in.S != 1 ? poe::verify_cofactor(*in.G, in.st, pf, o.cofactor) : poe::verify(*in.G, in.st, pf);
    }
    Record r;
    r.add("accepted", v.accepted ? 1 : 0);
    if (!v.accepted)
        r.add("reason", v.reason);
    emit(r.lines());
    return v.accepted ? 0 : 1;
}

#ifdef UOG_HAVE_TEST_GROUPS
/* honest proof, then the order-2 forgery; needs a zmul group */
int cmd_poe_forge(const PoeOpts & o)
{
    PoeInputs in = poe_inputs(o, false);
    group::Element eps;
    try {
        eps = group::order_two_element(in.G);
    } catch (const type_error &) {
        throw usage_error("forge needs a zmul group");
    }
    poe::Proof pf = poe::prove_fs(*in.G, in.st, o.lambda, in.S, o.cofactor);
    auto [fs, fp] = poe::forge_with_low_order(*in.G, in.st, pf, eps);
    bool ok = in.S != 1 ? bool(poe::verify_cofactor(*in.G, fs, fp, o.cofactor)) : bool(poe::verify(*in.G, fs, fp));
    Record r = statement_record(in);
    r.add("cofactor", o.cofactor).add("ell", pf.ell).add("forged_claim", to_hex(in.G->encode(fs.claim)))
        .add("forged_q", to_hex(in.G->encode(fp.Q))).add("forgery_accepted", ok ? 1 : 0);
    emit(r.lines());
    return ok ? 0 : 1;
}
#endif

int cmd_oracle(const std::string & kind, const std::string & disc, const std::string & p_text,
               const std::string & f_text)
{
    Record r;
    if (kind == "classnum") {
        if (disc.empty())
            throw usage_error("classnum needs --disc");
        BigInt D = parse_int(disc, "--disc");
        classgroup::Discriminant d = [&] {
            try {
                return classgroup::Discriminant(D);
            } catch (const domain_error & e) {
                throw usage_error(e.what());
            }
        }();
        r.add("disc", D).add("h", classgroup::enumerate_class_group(d).size());
    } else if (kind == "zeta") {
        if (p_text.empty() || f_text.empty())
            throw usage_error("zeta needs --p and --f");
        BigInt p = parse_int(p_text, "--p");
        if (p < 3 || !is_probable_prime(p))
            throw usage_error("--p must be an odd prime");
        std::vector<BigInt> coeffs;
        std::istringstream is(f_text);
        std::string tok;
        while (std::getline(is, tok, ','))
            coeffs.push_back(parse_int(tok, "--f"));
        PrimeField F(p);
        for (auto & c : coeffs)
            c = mod(c, p);
        jacobian::HyperCurve curve = [&] {
            try {
                return jacobian::HyperCurve(F, FpPoly(coeffs));
            } catch (const domain_error & e) {
                throw usage_error(e.what());
            }
        }();
        jacobian::ZetaData z = jacobian::zeta_data(curve);
        r.add("p", p).add("n1", z.n1).add("n2", z.n2).add("n3", z.n3).add("e1", z.e1).add("e2", z.e2)
            .add("e3", z.e3).add("order", jacobian::order_oracle(curve));
    } else {
        throw usage_error("--kind must be classnum or zeta");
    }
    emit(r.lines());
    return 0;
}

} // namespace

int main(int argc, char ** argv)
{
#ifdef UOG_HAVE_TEST_GROUPS
    group::register_test_groups();
#endif
    CLI::App app{"unknown-order group toolkit"};
    app.require_subcommand(1);
    app.add_flag("--quiet", quiet, "Suppress output; exit code only");

    GenOpts gen;
    auto * g = app.add_subcommand("gen", "Generate a group from a public seed");
    g->add_option("--lambda", gen.lambda)->required();
    g->add_option("--rho", gen.rho)->required();
    g->add_option("--seed", gen.seed, "UTF-8 string, or hex bytes after 0x")->required();
    g->add_option("--kind", gen.kind, "jacobian or classgroup");
    g->add_option("--out", gen.out, "Write the record to PATH and the transcript to PATH.transcript");

    unsigned p_lambda = 0, p_rho = 0;
    auto * pa = app.add_subcommand("params", "Group size for a (lambda, rho) target");
    pa->add_option("--lambda", p_lambda)->required();
    pa->add_option("--rho", p_rho)->required();

    std::string c_disc, c_sample;
    auto * co = app.add_subcommand("compress", "Compress a reduced form read from stdin");
    co->add_option("--disc", c_disc);
    co->add_option("--sample", c_sample, "Compress a form sampled from this seed instead");
    std::string d_disc;
    auto * de = app.add_subcommand("decompress", "Decompress hex read from stdin");
    de->add_option("--disc", d_disc)->required();

    HuntOpts hunt;
    auto * hu = app.add_subcommand("hunt", "Find the order of an element");
    hu->add_option("--group", hunt.group)->required();
    hu->add_option("--element", hunt.element, "Element encoding (hex)");
    hu->add_option("--sample", hunt.sample, "Sample the element from this seed");
    hu->add_option("--bound", hunt.bound, "Order bound M = 2^bits")->required();
    hu->add_option("--u", hunt.u);
    hu->add_option("--algo", hunt.algo, "bsgs or primorial");
    hu->add_option("--budget", hunt.budget);
    hu->add_option("--memory-cap", hunt.memory_cap);
    hu->add_flag("--negation", hunt.negation);

    std::string e_u, e_seed = "uog-semismooth";
    unsigned e_bits = 64, e_threads = 0;
    std::uint64_t e_trials = 100000;
    auto * es = app.add_subcommand("estimate-semismooth", "Monte Carlo semismooth density");
    es->add_option("--u", e_u)->required();
    es->add_option("--bits", e_bits);
    es->add_option("--trials", e_trials);
    es->add_option("--seed", e_seed);
    es->add_option("--threads", e_threads);

    PoeOpts po;
    auto * pe = app.add_subcommand("poe", "Proof of exponentiation");
    pe->require_subcommand(1);
    auto add_poe = [&](CLI::App * s) {
        s->add_option("--group", po.group)->required();
        s->add_option("--base", po.base, "Base encoding (hex)");
        s->add_option("--base-seed", po.base_seed, "Sample the base from this seed");
        s->add_option("--exp", po.exp)->required();
        s->add_option("--claim", po.claim, "Claimed result encoding (hex)");
        s->add_option("--cofactor", po.cofactor, "Work in [S]G with S = lcm(1..N)");
        s->add_option("--lambda", po.lambda, "Challenge bits");
    };
    auto * pp = pe->add_subcommand("prove");
    add_poe(pp);
    auto * pv = pe->add_subcommand("verify");
    add_poe(pv);
    pv->add_option("--q", po.q, "Proof element (hex)");
    pv->add_option("--ell", po.ell, "Challenge; recomputed from the statement when absent");
#ifdef UOG_HAVE_TEST_GROUPS
    auto * pf = pe->add_subcommand("forge", "Order-2 forgery demo on a zmul group");
    add_poe(pf);
#endif

    std::string o_kind, o_disc, o_p, o_f;
    auto * orc = app.add_subcommand("oracle", "Small-case reference values");
    orc->add_option("--kind", o_kind, "classnum or zeta")->required();
    orc->add_option("--disc", o_disc);
    orc->add_option("--p", o_p);
    orc->add_option("--f", o_f, "c0,c1,...,c7 (monic degree 7)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp & e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp & e) {
        return app.exit(e);
    } catch (const CLI::ParseError & e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*g)
            return cmd_gen(gen);
        if (*pa)
            return cmd_params(p_lambda, p_rho);
        if (*co)
            return cmd_compress(c_disc, c_sample);
        if (*de)
            return cmd_decompress(d_disc);
        if (*hu)
            return cmd_hunt(hunt);
        if (*es)
            return cmd_estimate(e_u, e_bits, e_trials, e_seed, e_threads);
        if (*pp)
            return cmd_poe_prove(po);
        if (*pv)
            return cmd_poe_verify(po);
#ifdef UOG_HAVE_TEST_GROUPS
        if (*pf)
            return cmd_poe_forge(po);
#endif
        if (*orc)
            return cmd_oracle(o_kind, o_disc, o_p, o_f);
    } catch (const usage_error & e) {
        std::fprintf(stderr, "uog: %s\n", e.what());
        return 2;
    } catch (const resource_error & e) {
        std::fprintf(stderr, "uog: resource limit: %s\n", e.what());
        return 3;
    } catch (const std::exception & e) {
        std::fprintf(stderr, "uog: internal error: %s\n", e.what());
        return 3;
    }
    return 2;
}
