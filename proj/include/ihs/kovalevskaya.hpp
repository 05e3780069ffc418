#pragma once

#include "ihs/poisson.hpp"

namespace ihs::kovalevskaya {

// Variables S1, S2, S3, R1, R2, R3 on e(3)*.
poisson::PoissonManifold e3_manifold();

// H = (S1^2 + S2^2 + 2 S3^2)/2 + R1,
// K = (S1^2/2 - S2^2/2 - R1)^2 + (S1 S2 - R2)^2,
// on the leaf R.R = 1, S.R = g with 0 < |g| < 1.
poisson::IntegrableSystem kovalevskaya_system(double g);

}  // namespace ihs::kovalevskaya
