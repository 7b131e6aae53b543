#pragma once
// Convenience umbrella for the whole library.

#include "enclose/environment.hpp"
#include "enclose/numeric.hpp"
#include "enclose/regime.hpp"

#include "enclose/decentralized.hpp"
#include "enclose/monopoly.hpp"
#include "enclose/planner.hpp"
#include "enclose/structural.hpp"

#include "enclose/oracle.hpp"
#include "enclose/regions.hpp"

#include "enclose/io.hpp"
