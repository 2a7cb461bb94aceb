#pragma once

// Umbrella header: the whole library in one include.

#include "isolat/catalog.hpp"
#include "isolat/constructions.hpp"
#include "isolat/downset_product.hpp"
#include "isolat/errors.hpp"
#include "isolat/extend.hpp"
#include "isolat/fb.hpp"
#include "isolat/fd.hpp"
#include "isolat/io.hpp"
#include "isolat/jsl.hpp"
#include "isolat/lattice.hpp"
#include "isolat/map.hpp"
#include "isolat/partial.hpp"
#include "isolat/poset.hpp"
#include "isolat/retract.hpp"
#include "isolat/rng.hpp"
#include "isolat/scenario.hpp"
#include "isolat/semilat.hpp"
#include "isolat/shapes.hpp"
#include "isolat/subspaces.hpp"
#include "isolat/term.hpp"
#include "isolat/variety.hpp"
#include "isolat/verify.hpp"
#include "isolat/version.hpp"
