#ifndef LEXALIGN_ERROR_HPP
#define LEXALIGN_ERROR_HPP

#include <stdexcept>
#include <string>

namespace lexalign {

// Raised for malformed input files and violated data invariants.
// The CLI maps this to exit code 1; usage problems exit with 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[noreturn]] inline void fail(const std::string& msg) { throw DataError(msg); }

}  // namespace lexalign

#endif
