#pragma once

#include <stdexcept>
#include <string>

namespace uog {

/* Precondition or mathematical domain violation (negative sqrt input,
 * incompatible CRT residues, composite challenge, ...). */
class domain_error : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/* Wire data that does not describe a valid object. */
class corrupt_encoding : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/* Desk-scale bounds exceeded (enumeration limits, memory caps). */
class resource_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/* Elements from different groups combined. */
class type_error : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

} // namespace uog
