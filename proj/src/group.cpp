#include "uog/group.hpp"

#include <mutex>
#include <sstream>

#include "uog/errors.hpp"

namespace uog::group {

Group::Group(std::string descriptor) : descriptor_(std::move(descriptor))
{
    Bytes h = sha256(bytes_of(descriptor_));
    id_ = 0;
    for (int i = 0; i < 8; ++i)
        id_ = (id_ << 8) | h[i];
}

bool Group::equal(const Element & a, const Element & b) const
{
    check_owner(a);
    check_owner(b);
    return a.value == b.value;
}

Element Group::pow(const Element & a, const BigInt & n) const
{
    check_owner(a);
    if (n < 0)
        return pow(inverse(a), -n);
    Element r = identity();
    for (std::size_t i = bit_length(n); i-- > 0;) {
        r = op(r, r);
        if (mpz_tstbit(n.get_mpz_t(), i))
            r = op(r, a);
    }
    return r;
}

void Group::check_owner(const Element & a) const
{
    if (a.group_id != id_)
        throw type_error("element belongs to a different group than " + descriptor_);
}

namespace {

/* ---- class group -------------------------------------------------------- */

class ClassGroupAdapter : public Group {
  public:
    explicit ClassGroupAdapter(classgroup::Discriminant d)
        : Group("clgrp:" + int_to_hex(d.value())), d_(std::move(d))
    {
    }

    Element op(const Element & a, const Element & b) const override
    {
        return element(classgroup::compose(form(a), form(b)));
    }
    Element inverse(const Element & a) const override { return element(classgroup::invert(form(a))); }
    Element identity() const override { return element(classgroup::identity(d_)); }
    Bytes encode(const Element & a) const override { return bytes_of(classgroup::to_string(form(a))); }
    Element decode(std::span<const std::uint8_t> bytes) const override
    {
        std::string s(bytes.begin(), bytes.end());
        return element(classgroup::parse(s, d_));
    }
    Element sample(std::span<const std::uint8_t> seed) const override
    {
        return element(classgroup::sample_element(d_, seed));
    }
    bool membership_check(const Element & a) const override
    {
        if (a.group_id != id() || !std::holds_alternative<classgroup::QuadForm>(a.value))
            return false;
        const auto & f = std::get<classgroup::QuadForm>(a.value);
        if (f.a <= 0 || f.discriminant() != d_.value() || !classgroup::is_reduced(f))
            return false;
        BigInt g;
        mpz_gcd(g.get_mpz_t(), f.a.get_mpz_t(), f.b.get_mpz_t());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), f.c.get_mpz_t());
        return g == 1;
    }
    Element pow(const Element & a, const BigInt & n) const override
    {
        return element(classgroup::pow(form(a), n));
    }

  private:
    const classgroup::QuadForm & form(const Element & a) const
    {
        check_owner(a);
        if (!std::holds_alternative<classgroup::QuadForm>(a.value))
            throw type_error("class group: element is not a form");
        return std::get<classgroup::QuadForm>(a.value);
    }

    classgroup::Discriminant d_;
};

/* ---- Jacobian ----------------------------------------------------------- */

std::string curve_descriptor(const jacobian::HyperCurve & c)
{
    std::string s = "hyell:" + int_to_hex(c.field().modulus()) + ":";
    for (std::size_t i = 0; i <= 7; ++i) {
        if (i)
            s += ",";
        s += int_to_hex(c.f().coeff(i));
    }
    return s;
}

class JacobianAdapter : public Group {
  public:
    explicit JacobianAdapter(jacobian::HyperCurve c) : Group(curve_descriptor(c)), c_(std::move(c)) {}

    Element op(const Element & a, const Element & b) const override
    {
        return element(jacobian::add(c_, div(a), div(b)));
    }
    Element inverse(const Element & a) const override { return element(jacobian::negate(c_, div(a))); }
    Element identity() const override { return element(jacobian::identity()); }
    Bytes encode(const Element & a) const override { return jacobian::serialize(c_, div(a)); }
    Element decode(std::span<const std::uint8_t> bytes) const override
    {
        return element(jacobian::deserialize(c_, bytes));
    }
    Element sample(std::span<const std::uint8_t> seed) const override
    {
        return element(jacobian::sample_divisor(c_, seed));
    }
    bool membership_check(const Element & a) const override
    {
        return a.group_id == id() && std::holds_alternative<jacobian::MumfordDivisor>(a.value) &&
               jacobian::validate(c_, std::get<jacobian::MumfordDivisor>(a.value));
    }
    Element pow(const Element & a, const BigInt & n) const override
    {
        return element(jacobian::scalar_mul(c_, n, div(a)));
    }

  private:
    const jacobian::MumfordDivisor & div(const Element & a) const
    {
        check_owner(a);
        if (!std::holds_alternative<jacobian::MumfordDivisor>(a.value))
            throw type_error("jacobian: element is not a divisor");
        return std::get<jacobian::MumfordDivisor>(a.value);
    }

    jacobian::HyperCurve c_;
};

/* ---- [S]G --------------------------------------------------------------- */

class CofactorGroup : public Group {
  public:
    CofactorGroup(GroupPtr inner, BigInt S)
        : Group("cof:" + int_to_hex(S) + "/" + inner->descriptor()), inner_(std::move(inner)),
          S_(std::move(S))
    {
        if (S_ < 1)
            throw domain_error("cofactor_subgroup: S must be positive");
    }

    const GroupPtr & inner() const { return inner_; }
    const BigInt & S() const { return S_; }

    Element op(const Element & a, const Element & b) const override
    {
        return pair(inner_->op(value(a), value(b)), inner_->op(wit(a), wit(b)));
    }
    Element inverse(const Element & a) const override
    {
        return pair(inner_->inverse(value(a)), inner_->inverse(wit(a)));
    }
    Element identity() const override { return pair(inner_->identity(), inner_->identity()); }
    bool equal(const Element & a, const Element & b) const override
    {
        return inner_->equal(value(a), value(b));
    }
    Bytes encode(const Element & a) const override
    {
        Bytes v = inner_->encode(value(a)), w = inner_->encode(wit(a));
        Bytes out = to_bytes_be(v.size(), 4);
        out.insert(out.end(), v.begin(), v.end());
        out.insert(out.end(), w.begin(), w.end());
        return out;
    }
    Element decode(std::span<const std::uint8_t> bytes) const override
    {
        if (bytes.size() < 4)
            throw corrupt_encoding("cofactor: truncated encoding");
        std::size_t n = from_bytes_be(bytes.subspan(0, 4)).get_ui();
        if (n > bytes.size() - 4)
            throw corrupt_encoding("cofactor: bad length prefix");
        Element v = inner_->decode(bytes.subspan(4, n));
        Element w = inner_->decode(bytes.subspan(4 + n));
        if (!inner_->equal(inner_->pow(w, S_), v))
            throw corrupt_encoding("cofactor: witness does not map to value");
        return pair(std::move(v), std::move(w));
    }
    Element sample(std::span<const std::uint8_t> seed) const override
    {
        Element p = inner_->sample(seed);
        return pair(inner_->pow(p, S_), p);
    }
    bool membership_check(const Element & a) const override
    {
        if (a.group_id != id() || !a.witness)
            return false;
        Element v = make_inner(a.value);
        return inner_->membership_check(v) && inner_->membership_check(*a.witness) &&
               inner_->equal(inner_->pow(*a.witness, S_), v);
    }
    Element pow(const Element & a, const BigInt & n) const override
    {
        return pair(inner_->pow(value(a), n), inner_->pow(wit(a), n));
    }

  private:
    Element make_inner(const Element::Value & v) const { return Element{v, inner_->id(), nullptr}; }
    Element value(const Element & a) const
    {
        check_owner(a);
        return make_inner(a.value);
    }
    const Element & wit(const Element & a) const
    {
        check_owner(a);
        if (!a.witness)
            throw domain_error("cofactor: element carries no witness");
        return *a.witness;
    }
    Element pair(Element v, Element w) const
    {
        Element e = element(std::move(v.value));
        e.witness = std::make_shared<const Element>(std::move(w));
        return e;
    }

    GroupPtr inner_;
    BigInt S_;
};

std::mutex registry_mu;
std::vector<DescriptorParser> & registry()
{
    static std::vector<DescriptorParser> r;
    return r;
}

} // namespace

GroupPtr class_group(const classgroup::Discriminant & d)
{
    return std::make_shared<ClassGroupAdapter>(d);
}

GroupPtr jacobian_group(const jacobian::HyperCurve & curve)
{
    return std::make_shared<JacobianAdapter>(curve);
}

GroupPtr cofactor_subgroup(GroupPtr inner, const BigInt & S)
{
    return std::make_shared<CofactorGroup>(std::move(inner), S);
}

GroupPtr base_group(const GroupPtr & g)
{
    if (auto c = std::dynamic_pointer_cast<const CofactorGroup>(g))
        return c->inner();
    return g;
}

BigInt cofactor_of(const GroupPtr & g)
{
    if (auto c = std::dynamic_pointer_cast<const CofactorGroup>(g))
        return c->S();
    return 1;
}

/* ---- counting decorator ------------------------------------------------- */

CountingGroup::CountingGroup(GroupPtr inner) : Group(inner->descriptor()), inner_(std::move(inner)) {}

Element CountingGroup::op(const Element & a, const Element & b) const
{
    ++ops_;
    return inner_->op(a, b);
}

Element CountingGroup::inverse(const Element & a) const
{
    ++inversions_;
    return inner_->inverse(a);
}

Element CountingGroup::identity() const
{
    return inner_->identity();
}

bool CountingGroup::equal(const Element & a, const Element & b) const
{
    return inner_->equal(a, b);
}

Bytes CountingGroup::encode(const Element & a) const
{
    return inner_->encode(a);
}

Element CountingGroup::decode(std::span<const std::uint8_t> bytes) const
{
    return inner_->decode(bytes);
}

Element CountingGroup::sample(std::span<const std::uint8_t> seed) const
{
    return inner_->sample(seed);
}

bool CountingGroup::membership_check(const Element & a) const
{
    return inner_->membership_check(a);
}

Element CountingGroup::pow(const Element & a, const BigInt & n) const
{
    {
        std::lock_guard lock(mu_);
        pows_.push_back(n);
    }
    return Group::pow(a, n);
}

std::vector<BigInt> CountingGroup::pow_log() const
{
    std::lock_guard lock(mu_);
    return pows_;
}

void CountingGroup::reset()
{
    ops_ = 0;
    inversions_ = 0;
    std::lock_guard lock(mu_);
    pows_.clear();
}

/* ---- descriptors -------------------------------------------------------- */

void register_descriptor_parser(DescriptorParser parser)
{
    std::lock_guard lock(registry_mu);
    for (DescriptorParser p : registry())
        if (p == parser)
            return;
    registry().push_back(parser);
}

GroupPtr from_descriptor(std::string_view s)
{
    try {
        if (s.starts_with("clgrp:"))
            return class_group(classgroup::Discriminant(int_from_hex(s.substr(6))));
        if (s.starts_with("hyell:")) {
            std::string_view rest = s.substr(6);
            std::size_t colon = rest.find(':');
            if (colon == std::string_view::npos)
                throw corrupt_encoding("descriptor: hyell needs p:coefficients");
            PrimeField F(int_from_hex(rest.substr(0, colon)));
            std::vector<BigInt> c;
            std::stringstream in{std::string(rest.substr(colon + 1))};
            for (std::string tok; std::getline(in, tok, ',');) {
                BigInt v = int_from_hex(tok);
                if (v < 0 || v >= F.modulus())
                    throw corrupt_encoding("descriptor: coefficient out of range");
                c.push_back(v);
            }
            if (c.size() != 8)
                throw corrupt_encoding("descriptor: hyell needs 8 coefficients");
            return jacobian_group(jacobian::HyperCurve(F, FpPoly(c)));
        }
        if (s.starts_with("cof:")) {
            std::size_t slash = s.find('/');
            if (slash == std::string_view::npos)
                throw corrupt_encoding("descriptor: cof needs S/inner");
            return cofactor_subgroup(from_descriptor(s.substr(slash + 1)),
                                     int_from_hex(s.substr(4, slash - 4)));
        }
    } catch (const domain_error & e) {
        throw corrupt_encoding(std::string("descriptor: ") + e.what());
    }
    std::vector<DescriptorParser> parsers;
    {
        std::lock_guard lock(registry_mu);
        parsers = registry();
    }
    for (DescriptorParser p : parsers)
        if (GroupPtr g = p(s))
            return g;
    throw corrupt_encoding("descriptor: unknown group kind");
}

} // namespace uog::group
