#pragma once

// Evaluation back ends shared by the inequality checkers. A back end exposes
// fox_wright / normalized / tilde / hypergeometric returning Evaluated.

#include <vector>

#include "functions.hpp"
#include "series.hpp"

namespace foxwright {

struct Evaluated {
  double value = 0.0;
  double err = 0.0;        // bound on |value - exact|
  double condition = 1.0;  // cancellation indicator of the underlying sum
};

inline Evaluated to_evaluated(const EvalResult& r) {
  return {r.value, r.error_estimate(), r.condition_estimate};
}

// Double-precision back end over the series engine.
class SeriesEvaluator {
 public:
  SeriesEvaluator() = default;
  explicit SeriesEvaluator(EvalConfig cfg) : cfg_(cfg) {}

  const EvalConfig& config() const { return cfg_; }

  Evaluated fox_wright(const FoxWrightParams& p, double z, long first_k = 0) const {
    if (first_k == 0) return to_evaluated(eval(p, z, cfg_));
    return to_evaluated(eval_tail(p, TailSpec{first_k - 1}, z, cfg_));
  }
  Evaluated normalized(const FoxWrightParams& p, double z) const {
    return to_evaluated(eval_normalized(p, z, cfg_));
  }
  Evaluated tilde(const FoxWrightParams& p, double z) const {
    return to_evaluated(eval_tilde(p, z, cfg_));
  }
  Evaluated hypergeometric(const std::vector<double>& upper, const std::vector<double>& lower,
                           double z) const {
    return to_evaluated(pFq({upper, lower}, z, cfg_));
  }

 private:
  EvalConfig cfg_{};
};

}  // namespace foxwright
