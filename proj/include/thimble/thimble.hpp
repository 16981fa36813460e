#pragma once

#include "thimble/matrix.hpp"
#include "thimble/signature.hpp"
#include "thimble/lattice.hpp"
#include "thimble/basis_ops.hpp"
#include "thimble/variation.hpp"
#include "thimble/random.hpp"
#include "thimble/conjugation.hpp"
#include "thimble/index.hpp"
#include "thimble/generators.hpp"
#include "thimble/instance_io.hpp"
#include "thimble/verify.hpp"
