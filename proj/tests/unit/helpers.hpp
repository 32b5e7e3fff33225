#pragma once

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <iomanip>

namespace testing {

inline double rel_err(double got, double want) {
  if (want == 0.0) return std::fabs(got);
  return std::fabs(got - want) / std::fabs(want);
}

}  // namespace testing

#define CHECK_REL(got, want, tol)                                                    \
  do {                                                                               \
    const double got_ = (got);                                                       \
    const double want_ = (want);                                                     \
    INFO(std::setprecision(17) << "got " << got_ << " want " << want_);                                       \
    CHECK(::testing::rel_err(got_, want_) <= (tol));                                 \
  } while (0)

#define CHECK_ABS(got, want, tol)                                                    \
  do {                                                                               \
    const double got_ = (got);                                                       \
    const double want_ = (want);                                                     \
    INFO(std::setprecision(17) << "got " << got_ << " want " << want_);                                       \
    CHECK(std::fabs(got_ - want_) <= (tol));                                         \
  } while (0)
