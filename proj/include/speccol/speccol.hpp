#pragma once

// Spectral/pseudospectral collocation toolkit: orthogonal polynomial
// families, Gauss-Lobatto grids, barycentric differentiation matrices, and a
// theta-weighted collocation stepper for a nonlinear Fokker-Planck problem.

#include "speccol/cli.hpp"
#include "speccol/densela.hpp"
#include "speccol/fpsolver.hpp"
#include "speccol/grids.hpp"
#include "speccol/interp.hpp"
#include "speccol/orthopoly.hpp"
