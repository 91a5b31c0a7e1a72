#ifndef QHCYCLE_ERRORS_HPP
#define QHCYCLE_ERRORS_HPP

#include <stdexcept>

namespace qhcycle {

/// Base of every recoverable analysis failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// b_n or b_m vanishes somewhere, so a quotient by it is undefined.
class CoefficientUndefined : public Error {
 public:
  using Error::Error;
};

}  // namespace qhcycle

#endif
