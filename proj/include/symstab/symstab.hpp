#pragma once

#include "symstab/bundle.hpp"
#include "symstab/classifier.hpp"
#include "symstab/covering.hpp"
#include "symstab/elm.hpp"
#include "symstab/errors.hpp"
#include "symstab/json_io.hpp"
#include "symstab/rational.hpp"
#include "symstab/surface.hpp"
#include "symstab/torsion.hpp"
