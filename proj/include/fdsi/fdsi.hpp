#pragma once

#include "fdsi/allocators.hpp"
#include "fdsi/brute_force.hpp"
#include "fdsi/errors.hpp"
#include "fdsi/exact_search.hpp"
#include "fdsi/fairness.hpp"
#include "fdsi/generators.hpp"
#include "fdsi/instance.hpp"
#include "fdsi/notion.hpp"
#include "fdsi/rational.hpp"
#include "fdsi/sa_empty.hpp"
#include "fdsi/types.hpp"
