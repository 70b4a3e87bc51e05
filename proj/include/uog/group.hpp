#pragma once

#include <atomic>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "uog/classgroup.hpp"
#include "uog/jacobian.hpp"

namespace uog::group {

class Group;

/*
 * Backend-tagged element. group_id pins the element to the group that made
 * it; combining elements of different groups throws type_error. Elements of
 * a cofactor subgroup carry their preimage P with value = [S]P.
 */
struct Element {
    using Value = std::variant<BigInt, classgroup::QuadForm, jacobian::MumfordDivisor>;

    Value value;
    std::uint64_t group_id = 0;
    std::shared_ptr<const Element> witness;
};

/*
 * Abstract finite abelian group. Implementations are immutable after
 * construction and safe to share across threads.
 */
class Group {
  public:
    explicit Group(std::string descriptor);
    virtual ~Group() = default;

    const std::string & descriptor() const { return descriptor_; }
    /* first 8 bytes of SHA-256(descriptor), big-endian */
    std::uint64_t id() const { return id_; }

    virtual Element op(const Element & a, const Element & b) const = 0;
    virtual Element inverse(const Element & a) const = 0;
    virtual Element identity() const = 0;
    virtual bool equal(const Element & a, const Element & b) const;
    virtual Bytes encode(const Element & a) const = 0;
    /* Throws corrupt_encoding on anything that is not a canonical element encoding. */
    virtual Element decode(std::span<const std::uint8_t> bytes) const = 0;
    virtual Element sample(std::span<const std::uint8_t> seed) const = 0;
    virtual bool membership_check(const Element & a) const = 0;
    /* a^n, n < 0 through inverse. Default: left-to-right square and multiply over op. */
    virtual Element pow(const Element & a, const BigInt & n) const;

    bool is_identity(const Element & a) const { return equal(a, identity()); }
    /* Tags a raw backend value with this group; no validation (see membership_check). */
    Element element(Element::Value v) const { return Element{std::move(v), id_, nullptr}; }

  protected:
    void check_owner(const Element & a) const;

  private:
    std::string descriptor_;
    std::uint64_t id_;
};

using GroupPtr = std::shared_ptr<const Group>;

/* "clgrp:" int_to_hex(Delta) */
GroupPtr class_group(const classgroup::Discriminant & d);
/* "hyell:" hex(p) ":" hex(f0),...,hex(f7) */
GroupPtr jacobian_group(const jacobian::HyperCurve & curve);

/*
 * [S]G. sample(seed) returns [S]P for P = G.sample(seed) with P kept as the
 * witness; op/inverse/pow act on value and witness together. Membership is
 * decided only by recomputing [S]P from the witness. Encoding is
 * be32(len) || enc(value) || enc(P). Descriptor "cof:" hex(S) "/" inner.
 */
GroupPtr cofactor_subgroup(GroupPtr inner, const BigInt & S);

/* The group behind a cofactor subgroup (or g itself) and its S (1 otherwise). */
GroupPtr base_group(const GroupPtr & g);
BigInt cofactor_of(const GroupPtr & g);

/*
 * Decorator that counts calls. It shares the inner group's descriptor and id,
 * so elements pass through unchanged. pow runs the default square and
 * multiply over the counted op, and each pow call logs its exponent.
 */
class CountingGroup : public Group {
  public:
    explicit CountingGroup(GroupPtr inner);

    Element op(const Element & a, const Element & b) const override;
    Element inverse(const Element & a) const override;
    Element identity() const override;
    bool equal(const Element & a, const Element & b) const override;
    Bytes encode(const Element & a) const override;
    Element decode(std::span<const std::uint8_t> bytes) const override;
    Element sample(std::span<const std::uint8_t> seed) const override;
    bool membership_check(const Element & a) const override;
    Element pow(const Element & a, const BigInt & n) const override;

    const GroupPtr & inner() const { return inner_; }
    std::uint64_t ops() const { return ops_; }
    std::uint64_t inversions() const { return inversions_; }
    std::vector<BigInt> pow_log() const;
    void reset();

  private:
    GroupPtr inner_;
    mutable std::atomic<std::uint64_t> ops_{0}, inversions_{0};
    mutable std::mutex mu_;
    mutable std::vector<BigInt> pows_;
};

/*
 * Builds a group from its descriptor. Test-only descriptors (zmulN, zaddN)
 * resolve only if a parser was registered (see testgroups.hpp).
 */
GroupPtr from_descriptor(std::string_view descriptor);

using DescriptorParser = GroupPtr (*)(std::string_view);
void register_descriptor_parser(DescriptorParser parser);

} // namespace uog::group
