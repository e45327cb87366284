#pragma once

namespace gliomorph::survstats {

// Standard normal CDF, absolute error below 1e-12 over the whole real line.
double normal_cdf(double z);

// Regularized upper incomplete gamma Q(a, x) for a > 0, x >= 0.
double gamma_q(double a, double x);

// Upper tail of the chi-squared distribution with df degrees of freedom:
// P(X >= x) = Q(df/2, x/2).
double chisq_sf(double x, double df = 1.0);

}  // namespace gliomorph::survstats
