#pragma once

namespace monodec {

// Regularized incomplete beta function I_x(a, b), continued-fraction
// evaluation, absolute accuracy well below 1e-10 over the ranges used here.
double incomplete_beta(double a, double b, double x);

// Student-t CDF and the 97.5% quantile t(0.975, dof), inverted by bisection
// to 1e-12.
double student_t_cdf(double t, double dof);
double student_t_975(double dof);

// Upper tail P(F_{d1,d2} > f).
double f_sf(double f, double d1, double d2);

} // namespace monodec
