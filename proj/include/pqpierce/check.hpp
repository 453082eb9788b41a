#pragma once

#include <stdexcept>

namespace pqpierce {

// Raised when a structural invariant the construction depends on fails.
// The CLI maps this to its own exit code, distinct from bad input.
struct invariant_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pqpierce

#define PQ_CHECK(cond, msg)                           \
  do {                                                \
    if (!(cond)) throw ::pqpierce::invariant_error(msg); \
  } while (0)
