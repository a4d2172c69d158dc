#pragma once

#include "pmpd/bench.hpp"
#include "pmpd/bounds.hpp"
#include "pmpd/builder.hpp"
#include "pmpd/error.hpp"
#include "pmpd/evaluator.hpp"
#include "pmpd/exact_search.hpp"
#include "pmpd/instance.hpp"
#include "pmpd/seeds.hpp"
#include "pmpd/tolerance.hpp"
#include "pmpd/walk.hpp"
