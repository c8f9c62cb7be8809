#pragma once

#include <span>
#include <vector>

#include "htlab/series.hpp"

namespace htlab::detail {

/// Partial sums of a power series at the M points r e^{2 pi i j / M},
/// j = 0..M-1, through one length-M inverse DFT. Coefficients past M-1
/// fold onto n mod M, so any order works with any M.
class CircleEvaluator {
 public:
  explicit CircleEvaluator(int angles);

  int angles() const { return angles_; }
  void evaluate(std::span<const cplx> coeffs, double r, std::span<cplx> out);

 private:
  int angles_;
  std::vector<cplx> in_;
};

}  // namespace htlab::detail
