#pragma once

// Umbrella header: four complete-binary-tree tournament queues plus the
// benchmark, verification, and CLI plumbing around them.

#include "cbtpq/bench.hpp"
#include "cbtpq/bitnav.hpp"
#include "cbtpq/cli.hpp"
#include "cbtpq/common.hpp"
#include "cbtpq/differential.hpp"
#include "cbtpq/distributions.hpp"
#include "cbtpq/marin.hpp"
#include "cbtpq/pqcore.hpp"
#include "cbtpq/reduced.hpp"
#include "cbtpq/script.hpp"
#include "cbtpq/supercbt.hpp"
#include "cbtpq/timing.hpp"
#include "cbtpq/verify.hpp"
