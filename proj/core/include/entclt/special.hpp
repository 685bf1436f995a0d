#pragma once

namespace entclt {

// Gamma function for x > 0 via a Lanczos approximation (relative error
// well under 1e-12 on the range used here). Throws for x <= 0.
double gamma_fn(double x);

// log Gamma for x > 0 (overflow-safe route for large arguments).
double lgamma_fn(double x);

// Standard normal pdf and cdf.
double normal_pdf(double x);
double normal_cdf(double x);

}  // namespace entclt
