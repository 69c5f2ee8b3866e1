#pragma once

#include <cstdio>
#include <cstdlib>

namespace glcoh::detail {

[[noreturn]] inline void check_fail(const char* msg, const char* file,
                                    int line) {
  std::fprintf(stderr, "internal invariant violated: %s (%s:%d)\n", msg, file,
               line);
  std::abort();
}

}  // namespace glcoh::detail

// Structural invariant that must hold in every build type. Not for hot
// inner loops.
#define GLCOH_CHECK(cond, msg) \
  ((cond) ? void(0) : ::glcoh::detail::check_fail(msg, __FILE__, __LINE__))
