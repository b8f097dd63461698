#pragma once

#include "evostab/barriers.hpp"
#include "evostab/dynamics.hpp"
#include "evostab/game.hpp"
#include "evostab/generators.hpp"
#include "evostab/io.hpp"
#include "evostab/oracle.hpp"
#include "evostab/rational.hpp"
#include "evostab/report.hpp"
#include "evostab/stability.hpp"
