#pragma once

// Umbrella header for the binvote library: two equivalent families of
// neutral, strategy-proof binary voting rules (winning-coalition rules and
// sequential unanimity rules), the transformations between them, and
// exhaustive verification oracles.

#include "binvote/alg1.hpp"
#include "binvote/alg2.hpp"
#include "binvote/coalition.hpp"
#include "binvote/coalition_set.hpp"
#include "binvote/full_domain.hpp"
#include "binvote/json_io.hpp"
#include "binvote/profiles.hpp"
#include "binvote/rules.hpp"
#include "binvote/subset_sequence.hpp"
#include "binvote/verify.hpp"
