//
// wstar : finite W*-algebra commutator toolkit -- umbrella header
//

#pragma once

#include "wstar/algebra.hpp"
#include "wstar/central.hpp"
#include "wstar/commutator.hpp"
#include "wstar/derivations.hpp"
#include "wstar/errors.hpp"
#include "wstar/io.hpp"
#include "wstar/norms.hpp"
#include "wstar/random.hpp"
#include "wstar/spectral.hpp"
