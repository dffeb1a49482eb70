#pragma once

#include <utility>

#include "zd/errors.hpp"

namespace zd::testing {

// True iff fn() throws a zd::Error carrying exactly `code`.
template <typename Fn>
bool fails_with(Errc code, Fn&& fn) {
  try {
    std::forward<Fn>(fn)();
  } catch (const Error& e) {
    return e.code() == code;
  } catch (...) {
    return false;
  }
  return false;
}

}  // namespace zd::testing
