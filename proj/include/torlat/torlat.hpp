#pragma once

#include "torlat/catalog.hpp"
#include "torlat/cyclotomic.hpp"
#include "torlat/error.hpp"
#include "torlat/forge.hpp"
#include "torlat/group.hpp"
#include "torlat/json_io.hpp"
#include "torlat/lattice.hpp"
#include "torlat/quaternion.hpp"
#include "torlat/reflection_tori.hpp"
#include "torlat/report.hpp"
#include "torlat/schur.hpp"
