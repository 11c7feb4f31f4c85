#pragma once

#include "genbern/boolean_sum.hpp"
#include "genbern/derivatives.hpp"
#include "genbern/expr.hpp"
#include "genbern/interpolation.hpp"
#include "genbern/numkernel.hpp"
#include "genbern/operators.hpp"
#include "genbern/quadrature.hpp"
#include "genbern/roots.hpp"
#include "genbern/spectral.hpp"
