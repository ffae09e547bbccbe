#pragma once

#include "wiener/assignment.hpp"
#include "wiener/bounds.hpp"
#include "wiener/branch_and_bound.hpp"
#include "wiener/brute_force.hpp"
#include "wiener/caterpillar.hpp"
#include "wiener/errors.hpp"
#include "wiener/experiments.hpp"
#include "wiener/greedy.hpp"
#include "wiener/instance.hpp"
#include "wiener/json_io.hpp"
#include "wiener/random_instance.hpp"
#include "wiener/relaxation.hpp"
#include "wiener/simplex.hpp"
#include "wiener/solve_report.hpp"
#include "wiener/weighted_tree.hpp"
