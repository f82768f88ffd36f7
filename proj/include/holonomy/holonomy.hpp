#pragma once

#include "branch_data.hpp"
#include "classify.hpp"
#include "config.hpp"
#include "euclidean.hpp"
#include "finite_group.hpp"
#include "hurwitz.hpp"
#include "json_io.hpp"
#include "mcg.hpp"
#include "obstructions.hpp"
#include "orbits.hpp"
#include "rep_json.hpp"
#include "surface_rep.hpp"
#include "surgery.hpp"
