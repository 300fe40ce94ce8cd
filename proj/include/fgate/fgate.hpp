#pragma once

#include "fgate/analysis.hpp"
#include "fgate/config.hpp"
#include "fgate/constants.hpp"
#include "fgate/error.hpp"
#include "fgate/fieldgen.hpp"
#include "fgate/hamiltonian.hpp"
#include "fgate/io.hpp"
#include "fgate/propagator.hpp"
#include "fgate/simulation.hpp"
#include "fgate/sweep.hpp"
#include "fgate/version.hpp"
