#pragma once

#include "rsdual/types.hpp"
#include "rsdual/suN.hpp"
#include "rsdual/projective.hpp"
#include "rsdual/rs_lax.hpp"
#include "rsdual/double.hpp"
#include "rsdual/reduction.hpp"
#include "rsdual/sampling.hpp"
#include "rsdual/numdiff.hpp"
#include "rsdual/io.hpp"
#include "rsdual/verify.hpp"
