#pragma once

namespace ktpg {

// Inverse CDF of the standard normal distribution, |error| < 1e-9 on (0, 1).
// Rational initial approximation refined by one Halley step on erfc.
double normal_quantile(double p);

}  // namespace ktpg
