#pragma once

// Everything in one include. JSON support lives in fslog/json_io.hpp.

#include "fslog/cone_membership.hpp"
#include "fslog/discrete_data.hpp"
#include "fslog/error.hpp"
#include "fslog/fs_limits.hpp"
#include "fslog/hom.hpp"
#include "fslog/integer.hpp"
#include "fslog/lattice.hpp"
#include "fslog/marked_graph.hpp"
#include "fslog/matrix.hpp"
#include "fslog/monoid.hpp"
#include "fslog/pointed_cone.hpp"
