#pragma once

#include "octanorm/core.hpp"
#include "octanorm/norm2d.hpp"
#include "octanorm/numeric.hpp"
#include "octanorm/polygon.hpp"
#include "octanorm/props2d.hpp"
#include "octanorm/roughness.hpp"
#include "octanorm/seqspace.hpp"
#include "octanorm/slices2d.hpp"
#include "octanorm/spec_io.hpp"
