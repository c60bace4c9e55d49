#pragma once

#include "hyperfree/arrangement.hpp"
#include "hyperfree/errors.hpp"
#include "hyperfree/freeness.hpp"
#include "hyperfree/induction.hpp"
#include "hyperfree/io.hpp"
#include "hyperfree/lattice.hpp"
#include "hyperfree/moduli.hpp"
#include "hyperfree/scalars/bigrat.hpp"
#include "hyperfree/scalars/domain.hpp"
#include "hyperfree/scalars/int_poly.hpp"
#include "hyperfree/scalars/quad.hpp"
#include "hyperfree/scalars/rat_func.hpp"
#include "hyperfree/symmetry.hpp"
