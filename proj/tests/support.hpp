#pragma once

#include <optional>
#include <utility>

#include "lpplab/errors.hpp"

namespace support {

// Kind of the LabError raised by fn, or nothing when it returns normally.
template <class F>
std::optional<lpplab::ErrorKind> error_kind(F&& fn) {
  try {
    std::forward<F>(fn)();
  } catch (const lpplab::LabError& e) {
    return e.kind();
  }
  return std::nullopt;
}

}  // namespace support

#define CHECK_KIND(expr, kind) CHECK(support::error_kind([&] { (void)(expr); }) == (kind))
