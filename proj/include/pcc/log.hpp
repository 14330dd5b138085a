#pragma once

#include <cstdlib>
#include <iostream>
#include <string_view>

namespace pcc {

// PCC_LOG=debug turns on iteration traces on stderr.
inline bool debug_enabled() {
  static const bool on = [] {
    const char* v = std::getenv("PCC_LOG");
    return v != nullptr && std::string_view(v) == "debug";
  }();
  return on;
}

#define PCC_DEBUG(expr)                                  \
  do {                                                   \
    if (::pcc::debug_enabled()) std::clog << expr << '\n'; \
  } while (0)

}  // namespace pcc
