#pragma once

#include "bessel.hpp"
#include "branch_model.hpp"
#include "errors.hpp"
#include "near_origin.hpp"
#include "numerov.hpp"
#include "perturbation.hpp"
#include "pseudo_potential.hpp"
#include "report.hpp"
#include "spectral_solver.hpp"
#include "tridiagonal.hpp"
