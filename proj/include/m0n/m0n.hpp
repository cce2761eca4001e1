#pragma once

#include "m0n/arith.hpp"
#include "m0n/cache.hpp"
#include "m0n/conjectures.hpp"
#include "m0n/errors.hpp"
#include "m0n/invariant.hpp"
#include "m0n/partition.hpp"
#include "m0n/plethysm.hpp"
#include "m0n/recursion.hpp"
#include "m0n/series.hpp"
#include "m0n/symfun.hpp"
#include "m0n/sympoly.hpp"
#include "m0n/trees.hpp"
