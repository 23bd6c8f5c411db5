#pragma once

#include <doctest.h>

#include <optional>

#include "fivevec/numeric.hpp"

// Error code thrown by f, or nullopt when it returns normally.
template <typename F>
std::optional<fivevec::ErrorCode> code_of(F&& f) {
  try {
    f();
  } catch (const fivevec::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

#define CHECK_CODE(expr, expected) CHECK(code_of([&] { (void)(expr); }) == std::optional(fivevec::ErrorCode::expected))
