#pragma once

#include "liftlab/analysis.hpp"
#include "liftlab/error.hpp"
#include "liftlab/expansion.hpp"
#include "liftlab/experiments.hpp"
#include "liftlab/graph.hpp"
#include "liftlab/lift.hpp"
#include "liftlab/parallel.hpp"
#include "liftlab/random.hpp"
#include "liftlab/shift_character.hpp"
#include "liftlab/spectral.hpp"
