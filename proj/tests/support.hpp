#pragma once

#include <cmath>
#include <vector>

#include "sflow/grouprep.hpp"
#include "sflow/linalg.hpp"
#include "sflow/operators.hpp"

namespace testing {

inline bool near(const sflow::Matrix& a, const sflow::Matrix& b, double tol = 1e-10) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return sflow::max_abs(a - b) <= tol;
}

// Z2 acting by diag(1, -1) on R^2.
inline sflow::OrthogonalAction z2_flip() {
  return sflow::OrthogonalAction::from_generators(sflow::cyclic_group(2), {{1, sflow::Matrix::diagonal({1.0, -1.0})}},
                                                  2);
}

inline sflow::OrthogonalAction z2_swap() {
  return sflow::OrthogonalAction::from_generators(sflow::cyclic_group(2), {{1, sflow::Matrix{{0, 1}, {1, 0}}}}, 2);
}

inline sflow::OperatorPath scalar(double a, double b, sflow::Tails tails = {}) {
  return sflow::OperatorPath::affine(sflow::Matrix{{a}}, sflow::Matrix{{b}}, tails);
}

inline std::vector<std::int64_t> coeffs(std::initializer_list<std::int64_t> v) { return v; }

}  // namespace testing
