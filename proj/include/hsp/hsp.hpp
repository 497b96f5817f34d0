#pragma once

#include "hsp/error.hpp"
#include "hsp/group.hpp"
#include "hsp/subgroup_lattice.hpp"
#include "hsp/character_table.hpp"
#include "hsp/linalg.hpp"
#include "hsp/measurements.hpp"
#include "hsp/verify.hpp"
#include "hsp/descriptor.hpp"
#include "hsp/report.hpp"
