#include "circle_eval.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>

#include "htlab/errors.hpp"

namespace htlab::detail {

namespace {

// The FFTW planner is not thread safe; execution with fftw_execute_dft is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [n, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    std::vector<cplx> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
    fftw_plan plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                                      reinterpret_cast<fftw_complex*>(b.data()), FFTW_BACKWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(n, plan);
    return plan;
  }

 private:
  std::mutex mu_;
  std::map<int, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

}  // namespace

CircleEvaluator::CircleEvaluator(int angles) : angles_(angles), in_(static_cast<std::size_t>(angles)) {
  if (angles < 3) throw DomainError("circle grid needs at least 3 angles");
}

void CircleEvaluator::evaluate(std::span<const cplx> coeffs, double r, std::span<cplx> out) {
  if (out.size() != in_.size()) throw DomainError("circle output buffer has the wrong size");
  std::fill(in_.begin(), in_.end(), cplx{});
  double rn = 1.0;
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    in_[n % in_.size()] += coeffs[n] * rn;
    rn *= r;
  }
  fftw_execute_dft(plan_cache().get(angles_), reinterpret_cast<fftw_complex*>(in_.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace htlab::detail
