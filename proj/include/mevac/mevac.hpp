#pragma once

// Umbrella header. Pull in everything; individual headers stay usable on
// their own for targeted builds.

#include "mevac/commands.hpp"
#include "mevac/config.hpp"
#include "mevac/constants.hpp"
#include "mevac/ledger.hpp"
#include "mevac/macro.hpp"
#include "mevac/material.hpp"
#include "mevac/modes.hpp"
#include "mevac/quantity.hpp"
#include "mevac/report.hpp"
#include "mevac/units.hpp"
#include "mevac/vacuum.hpp"
#include "mevac/vec3.hpp"
