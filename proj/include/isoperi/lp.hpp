#pragma once

// Small dense linear programming: tableau simplex with Bland's rule and a
// phase-one auxiliary column. Sized for a few hundred constraints.

#include <vector>

#include "isoperi/numkit.hpp"

namespace isoperi::lp {

enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Result {
  Status status = Status::kInfeasible;
  double value = 0.0;
  Vec x;
};

// maximize c.x  subject to  A x <= b,  x >= 0.
Result maximize_nonneg(const Matrix& a, const Vec& b, const Vec& c);

// maximize c.x  subject to  A x <= b,  x free.
Result maximize_free(const Matrix& a, const Vec& b, const Vec& c);

}  // namespace isoperi::lp
