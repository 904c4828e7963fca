#pragma once

#include "tileasm/curves.hpp"
#include "tileasm/errors.hpp"
#include "tileasm/lattice.hpp"
#include "tileasm/mincut.hpp"
#include "tileasm/pumping.hpp"
#include "tileasm/rational.hpp"
#include "tileasm/tile_model.hpp"
