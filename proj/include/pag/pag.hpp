#pragma once

#include "pag/rational.hpp"
#include "pag/environment.hpp"
#include "pag/strategy.hpp"
#include "pag/preference.hpp"
#include "pag/equilibrium.hpp"
#include "pag/oracle.hpp"
#include "pag/scenario_io.hpp"
#include "pag/dot_export.hpp"
#include "pag/cli.hpp"
