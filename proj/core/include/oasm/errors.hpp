#ifndef OASM_ERRORS_HPP
#define OASM_ERRORS_HPP

#include <stdexcept>

namespace oasm {

/// Bad user-supplied data: stream symbols, files, parameters.
/// The CLI maps this to exit code 1.
class input_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Object used outside its legal lifecycle (e.g. push after finalize).
class state_error : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Broken internal invariant. The CLI maps this to exit code 2.
class internal_error : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace oasm

#endif
