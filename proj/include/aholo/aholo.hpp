#pragma once

/// Umbrella header: arithmetic in A = C^m, free A-modules and antisymmetric
/// forms, circle-average differentiation and the A-differentiability
/// detector, atlas verification with tangent/cotangent transitions, the
/// componentwise glue report, and truncated Cech cohomology.

#include "aholo/algebra.hpp"
#include "aholo/builtin_maps.hpp"
#include "aholo/calculus.hpp"
#include "aholo/cech.hpp"
#include "aholo/errors.hpp"
#include "aholo/forms.hpp"
#include "aholo/glue.hpp"
#include "aholo/linear.hpp"
#include "aholo/manifold.hpp"
#include "aholo/norms.hpp"
#include "aholo/numeric_rank.hpp"
#include "aholo/polynomial.hpp"
#include "aholo/region.hpp"
#include "aholo/sampling.hpp"
