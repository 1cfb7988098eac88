#pragma once

#include <vector>

#include "otap/trigpoly.hpp"

namespace otap {

enum class KernelKind { DirichletBeta, ValleePoussin };

struct KernelHandle {
    KernelKind kind;
    int order = 0;      // k for DirichletBeta, m for ValleePoussin
    double beta = 0.0;  // DirichletBeta only
    TrigPoly poly;
};

// D_{k,beta}(t) = 1/2 cos(beta pi/2) + sum_{j=1}^{k} cos(j t + beta pi/2).
KernelHandle dirichlet_beta(int k, double beta);

// Closed form (sin((k+1/2)t + beta pi/2) - cos(t/2) sin(beta pi/2)) /
// (2 sin(t/2)); at t = 0 the removable singularity is replaced by the
// coefficient sum.
double dirichlet_beta_closed_form(int k, double beta, double t);

// Delayed-mean kernel: flat spectrum 1/2 on |k| <= m, linear taper
// (1 - k/(2m)) on m+1 <= |k| <= 2m-1.
KernelHandle vallee_poussin(int m);

struct KernelL1Check {
    double norm = 0;
    bool holds = false;  // norm <= 3*pi + 1e-6
};

KernelL1Check kernel_l1_check(int m, const QuadratureSpec& quad);

// True iff |D_{k,beta}(t)| <= pi/|t| + 1e-9 at every grid point; the grid
// must lie in (0, pi].
bool dirichlet_bound_check(int k, double beta, const std::vector<double>& t_grid);

}  // namespace otap
