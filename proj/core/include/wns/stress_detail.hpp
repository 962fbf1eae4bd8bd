#pragma once

#include "wns/scheme.hpp"

namespace wns {

/// Per-index working set of one level step: mollified inputs, the energy
/// pumping, amplitude fields and cached jet aggregates. The jet factors are
/// scalar carriers (W = s xi, Psi = s^2 xi), so six scalars per direction
/// reconstruct every tensor pointwise.
struct SchemeEngine::MollySample {
    double t = 0.0;
    double gamma_l = 0.0;      // mollified pumping (variant A)
    VectorField v_l;           // mollified parent velocity
    VectorField z_l;           // mollified parent z_q (incl. the datum part)
    SymTensorField R_l;        // mollified parent stress
    SymTensorField P_l;        // mollified parent product (v_q+z_q) (o) (v_q+z_q)
    ScalarField rho;
    std::array<ScalarField, 6> js;   // jet scalar psi phi per direction
    std::array<double, 6> moment{};  // grid mean of js^2
    std::array<ScalarField, 6> a2;   // amplitude squares
    VectorField wpc;                 // sum_xi curl curl (a_xi V_xi)
    VectorField wt;                  // temporal corrector (unscaled by chi)
};

}  // namespace wns
