#include "htlab/analytic.hpp"

#include "htlab/errors.hpp"

namespace htlab {

RationalFunction::RationalFunction(std::vector<cplx> numer, std::vector<cplx> denom)
    : numer_(std::move(numer)), denom_(std::move(denom)) {
  if (numer_.empty()) numer_.push_back(0.0);
  if (denom_.empty() || denom_[0] == cplx{}) throw DomainError("pole at origin");
}

Jet polynomial_jet(const std::vector<cplx>& p, cplx z) {
  // Horner for the value and the first two derivatives together.
  cplx v{}, d1{}, d2{};
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    d2 = d2 * z + 2.0 * d1;
    d1 = d1 * z + v;
    v = v * z + *it;
  }
  return {v, d1, d2};
}

cplx RationalFunction::operator()(cplx z) const {
  return polynomial_jet(numer_, z).f / polynomial_jet(denom_, z).f;
}

Jet RationalFunction::jet(cplx z) const {
  const Jet p = polynomial_jet(numer_, z);
  const Jet q = polynomial_jet(denom_, z);
  const cplx f = p.f / q.f;
  const cplx df = (p.df - f * q.df) / q.f;
  // (P - f Q)'' = 0  =>  f'' Q = P'' - 2 f' Q' - f Q''
  const cplx d2f = (p.d2f - 2.0 * df * q.df - f * q.d2f) / q.f;
  return {f, df, d2f};
}

PowerSeries RationalFunction::series(int order) const { return from_rational(numer_, denom_, order); }

RationalFunction RationalFunction::divided_by_z() const {
  if (numer_[0] != cplx{}) throw DomainError("f(0) != 0, cannot divide by z");
  std::vector<cplx> p(numer_.begin() + 1, numer_.end());
  return RationalFunction(std::move(p), denom_);
}

}  // namespace htlab
