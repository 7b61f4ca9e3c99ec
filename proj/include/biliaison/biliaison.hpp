// Umbrella header for the biliaison calculus.
#pragma once

#include "biliaison/error.hpp"
#include "biliaison/seqlattice.hpp"
#include "biliaison/sigmacalc.hpp"
#include "biliaison/classrep.hpp"
#include "biliaison/minimality.hpp"
#include "biliaison/moves.hpp"
#include "biliaison/json_io.hpp"
