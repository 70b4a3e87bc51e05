#include "uog/testgroups.hpp"

#include "uog/errors.hpp"

namespace uog::group {

namespace {

class ResidueGroup : public Group {
  public:
    ResidueGroup(bool multiplicative, BigInt n)
        : Group((multiplicative ? "zmulN:" : "zaddN:") + int_to_hex(n)), mul_(multiplicative),
          n_(std::move(n)), width_(to_bytes_be(n_).size())
    {
        if (mul_ && (n_ < 3 || mod(n_, 2) == 0))
            throw domain_error("mult_mod_group: N must be odd and >= 3");
        if (n_ < 1)
            throw domain_error("cyclic_group: n must be positive");
    }

    bool multiplicative() const { return mul_; }
    const BigInt & modulus() const { return n_; }

    Element residue_element(const BigInt & v) const
    {
        BigInt r = mod(v, n_);
        if (mul_ && !unit(r))
            throw domain_error("mult_mod_group: not a unit");
        return element(r);
    }

    Element op(const Element & a, const Element & b) const override
    {
        return element(mod(mul_ ? BigInt(val(a) * val(b)) : BigInt(val(a) + val(b)), n_));
    }
    Element inverse(const Element & a) const override
    {
        return element(mul_ ? mod_inverse(val(a), n_) : mod(-val(a), n_));
    }
    Element identity() const override { return element(BigInt(mul_ ? 1 : 0)); }
    Bytes encode(const Element & a) const override
    {
        Bytes out = bytes_of(mul_ ? "zm1:" : "za1:");
        Bytes v = to_bytes_be(val(a), width_);
        out.insert(out.end(), v.begin(), v.end());
        Bytes t = tag(v);
        out.insert(out.end(), t.begin(), t.end());
        return out;
    }
    Element decode(std::span<const std::uint8_t> bytes) const override
    {
        if (bytes.size() != 8 + width_ ||
            std::string(bytes.begin(), bytes.begin() + 4) != (mul_ ? "zm1:" : "za1:"))
            throw corrupt_encoding("residue group: bad encoding shape");
        Bytes v(bytes.begin() + 4, bytes.begin() + 4 + width_);
        if (tag(v) != Bytes(bytes.end() - 4, bytes.end()))
            throw corrupt_encoding("residue group: check bytes mismatch");
        BigInt x = from_bytes_be(v);
        if (x >= n_)
            throw corrupt_encoding("residue group: value out of range");
        return residue_element(x);
    }
    Element sample(std::span<const std::uint8_t> seed) const override
    {
        ByteStream s{Bytes(seed.begin(), seed.end())};
        for (;;) {
            BigInt x = s.field_element(n_);
            if (!mul_ || unit(x))
                return element(x);
        }
    }
    bool membership_check(const Element & a) const override
    {
        if (a.group_id != id() || !std::holds_alternative<BigInt>(a.value))
            return false;
        const BigInt & x = std::get<BigInt>(a.value);
        return x >= 0 && x < n_ && (!mul_ || unit(x));
    }
    Element pow(const Element & a, const BigInt & n) const override
    {
        if (!mul_)
            return element(mod(val(a) * n, n_));
        return element(mod_pow(val(a), n, n_));
    }

  private:
    bool unit(const BigInt & x) const
    {
        BigInt g;
        mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), n_.get_mpz_t());
        return g == 1;
    }
    const BigInt & val(const Element & a) const
    {
        check_owner(a);
        if (!std::holds_alternative<BigInt>(a.value))
            throw type_error("residue group: element is not an integer");
        return std::get<BigInt>(a.value);
    }
    Bytes tag(const Bytes & v) const
    {
        Bytes h = sha256(concat(bytes_of(descriptor()), v));
        return Bytes(h.begin(), h.begin() + 4);
    }

    bool mul_;
    BigInt n_;
    std::size_t width_;
};

const ResidueGroup & residue(const GroupPtr & g)
{
    GroupPtr b = g;
    if (auto c = std::dynamic_pointer_cast<const CountingGroup>(g))
        b = c->inner();
    auto r = std::dynamic_pointer_cast<const ResidueGroup>(b);
    if (!r)
        throw type_error("not a test group: " + g->descriptor());
    return *r;
}

GroupPtr parse_test_descriptor(std::string_view s)
{
    try {
        if (s.starts_with("zmulN:"))
            return mult_mod_group(int_from_hex(s.substr(6)));
        if (s.starts_with("zaddN:"))
            return cyclic_group(int_from_hex(s.substr(6)));
    } catch (const domain_error & e) {
        throw corrupt_encoding(std::string("descriptor: ") + e.what());
    }
    return nullptr;
}

} // namespace

GroupPtr mult_mod_group(const BigInt & N)
{
    return std::make_shared<ResidueGroup>(true, N);
}

GroupPtr cyclic_group(const BigInt & n)
{
    return std::make_shared<ResidueGroup>(false, n);
}

BigInt test_group_modulus(const GroupPtr & g)
{
    return residue(g).modulus();
}

Element order_two_element(const GroupPtr & g)
{
    const ResidueGroup & r = residue(g);
    if (!r.multiplicative())
        throw type_error("order_two_element: not a multiplicative group");
    Element e = r.residue_element(r.modulus() - 1);
    e.group_id = g->id();
    return e;
}

Element test_group_element(const GroupPtr & g, const BigInt & value)
{
    Element e = residue(g).residue_element(value);
    e.group_id = g->id();
    return e;
}

void register_test_groups()
{
    register_descriptor_parser(&parse_test_descriptor);
}

} // namespace uog::group
