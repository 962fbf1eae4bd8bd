#pragma once

#include <limits>

#include "wns/field.hpp"

namespace wns {

// L^p on the physical grid (trapezoid == exact spectral quadrature for the
// band-limited interpolant when p = 2). p = inf means the grid max.
double lp_norm(const ScalarField& f, double p);
double lp_norm(const VectorField& f, double p);
double lp_norm(const SymTensorField& f, double p);

double l2_norm(const VectorField& f);
double l2_norm(const SymTensorField& f);
double l1_norm(const SymTensorField& f);

/// Spectral-side L2 via Parseval (for cross-checks against quadrature).
double l2_norm_spectral(const VectorField& f);

/// Homogeneous Sobolev norm |nabla|^s on the mean-free part, normalized so
/// that for s <= 1 and any mean-zero f, ||f||_{H^s} <= ||grad f||_{L^2}.
double hs_norm(const VectorField& f, double s);
double hs_norm(const ScalarField& f, double s);

/// W^{s,p} = || (I - Lap)^{s/2} f ||_{L^p} (grid quadrature of the
/// multiplier image).
double wsp_norm(const VectorField& f, double s, double p);

/// C^N norm: sum over all space derivatives of order <= N of grid maxima
/// (time derivatives enter through trajectory variants elsewhere).
double cn_norm(const VectorField& f, int N);
double grad_linf(const VectorField& f);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace wns
