#pragma once

#include "uog/group.hpp"

/*
 * Known-order groups for tests and demos. Built only with UOG_TEST_GROUPS;
 * nothing in the core library depends on them.
 */
namespace uog::group {

/*
 * (Z/NZ)^x, N >= 3 odd. Descriptor "zmulN:" hex(N). Encoding is "zm1:", the
 * value in fixed width, then 4 bytes of SHA-256(descriptor || value) so that
 * corrupted bytes are caught (the value itself has no redundancy).
 * Decoding a non-unit throws domain_error.
 */
GroupPtr mult_mod_group(const BigInt & N);
/* Additive Z/nZ, n >= 1, descriptor "zaddN:" hex(n), same encoding shape with "za1:". */
GroupPtr cyclic_group(const BigInt & n);

/* N for a mult_mod group, n for a cyclic group; throws type_error otherwise. */
BigInt test_group_modulus(const GroupPtr & g);
/* N - 1 in a mult_mod group. */
Element order_two_element(const GroupPtr & g);
/* Element from a residue (unit check for mult_mod). */
Element test_group_element(const GroupPtr & g, const BigInt & value);

/* Makes from_descriptor understand zmulN / zaddN. */
void register_test_groups();

} // namespace uog::group
