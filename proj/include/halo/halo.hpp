#pragma once

// halo: numerical toolkit for rotational averaging operators on the
// hyperbolic plane. Header-only; include this to get everything.

#include "halo/area.hpp"
#include "halo/atoms.hpp"
#include "halo/families.hpp"
#include "halo/field.hpp"
#include "halo/geometry.hpp"
#include "halo/haar.hpp"
#include "halo/hausdorff.hpp"
#include "halo/kernel.hpp"
#include "halo/lp.hpp"
#include "halo/quadrature.hpp"
#include "halo/rng.hpp"
#include "halo/serialize.hpp"
#include "halo/sl2.hpp"
