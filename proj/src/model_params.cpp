#include "syt/model_params.hpp"

#include "syt/errors.hpp"

#include <cmath>
#include <string>

namespace syt {

ModelParams ModelParams::make(double lambda, double ell) {
  ModelParams p{lambda, ell};
  p.validate();
  return p;
}

void ModelParams::validate() const {
  if (!(std::isfinite(lambda) && lambda > 0.0))
    throw DomainError("lambda must be positive and finite, got " + std::to_string(lambda));
  if (!(std::isfinite(ell) && ell > 0.0))
    throw DomainError("ell must be positive and finite, got " + std::to_string(ell));
}

} // namespace syt
