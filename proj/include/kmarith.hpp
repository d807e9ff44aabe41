#pragma once

#include "kmarith/arith.hpp"
#include "kmarith/budget.hpp"
#include "kmarith/classify.hpp"
#include "kmarith/cone.hpp"
#include "kmarith/enumerate.hpp"
#include "kmarith/error.hpp"
#include "kmarith/gcm.hpp"
#include "kmarith/lattice.hpp"
#include "kmarith/reflect.hpp"
#include "kmarith/roots.hpp"
#include "kmarith/synthesis.hpp"
#include "kmarith/corpus.hpp"
