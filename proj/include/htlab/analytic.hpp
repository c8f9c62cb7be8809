#pragma once

#include <vector>

#include "htlab/series.hpp"

namespace htlab {

/// Values of f, f' and f'' at one point.
struct Jet {
  cplx f;
  cplx df;
  cplx d2f;
};

/// f = P / Q with polynomial coefficient lists in ascending powers.
/// Evaluation is exact up to rounding on the whole domain where Q != 0,
/// which makes it the reference route for the closed-form extremals.
class RationalFunction {
 public:
  RationalFunction(std::vector<cplx> numer, std::vector<cplx> denom);

  const std::vector<cplx>& numer() const { return numer_; }
  const std::vector<cplx>& denom() const { return denom_; }

  cplx operator()(cplx z) const;
  Jet jet(cplx z) const;

  /// Taylor expansion at the origin.
  PowerSeries series(int order) const;

  /// f(z) / z; requires numer[0] == 0.
  RationalFunction divided_by_z() const;

 private:
  std::vector<cplx> numer_;
  std::vector<cplx> denom_;
};

/// p(z), p'(z), p''(z) for a polynomial in ascending powers.
Jet polynomial_jet(const std::vector<cplx>& p, cplx z);

}  // namespace htlab
