#pragma once

// convenience umbrella: pulls in every module of the library

#include "embedlab/linalg.hpp"
#include "embedlab/io.hpp"
#include "embedlab/lp.hpp"
#include "embedlab/embeddability.hpp"
#include "embedlab/quantum_embed.hpp"
#include "embedlab/spacetime_cost.hpp"
#include "embedlab/accessibility.hpp"
#include "embedlab/thermo.hpp"
