#pragma once

// Scalar special functions used by the adjustment, surrogate and metric code.

namespace pcomb::special {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrt2 = 1.41421356237309504880;
inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double normal_pdf(double x);
double normal_cdf(double x);
/// Upper tail 1 - Phi(x), computed without cancellation.
double normal_ccdf(double x);
/// Inverse standard normal CDF (Wichura AS241). Returns -inf/+inf at 0/1.
double normal_quantile(double p);

/// log(1 + x) - x, accurate for small |x|.
double log1pmx(double x);

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);
/// x^(a-1) e^(-x) / Gamma(a), the standard gamma density.
double gamma_density(double a, double x);
/// Smallest x with P(a, x) = p.
double gamma_p_inv(double a, double p);
/// x with Q(a, x) = q.
double gamma_q_inv(double a, double q);

}  // namespace pcomb::special
