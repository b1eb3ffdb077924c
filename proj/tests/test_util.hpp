#pragma once

#include <doctest.h>

#include "dcg/error.hpp"

// Asserts that `expr` throws dcg::Error with the given code.
#define CHECK_THROWS_CODE(expr, expected)                      \
  do {                                                         \
    bool thrown_ = false;                                      \
    try {                                                      \
      expr;                                                    \
    } catch (const dcg::Error& e_) {                           \
      thrown_ = true;                                          \
      CHECK(e_.code() == (expected));                          \
    }                                                          \
    CHECK_MESSAGE(thrown_, "expected " << dcg::to_string(expected)); \
  } while (0)
