#ifndef TETRAPACK_ERROR_HPP_
#define TETRAPACK_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace tetrapack {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised by check_regularity when the six squared edge lengths differ.
struct NotRegular : Error {
  using Error::Error;
};

// Raised by classify_contact for pairs that are disjoint or overlapping.
struct NotTouching : Error {
  using Error::Error;
};

// Raised by inversion_center_report when the group has no point inversion.
struct NoInversion : Error {
  using Error::Error;
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }

} // namespace tetrapack

#endif // TETRAPACK_ERROR_HPP_
