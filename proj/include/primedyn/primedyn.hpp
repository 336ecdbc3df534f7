#pragma once

#include "primedyn/block_census.hpp"
#include "primedyn/chaotic_maps.hpp"
#include "primedyn/entropy.hpp"
#include "primedyn/error.hpp"
#include "primedyn/gap_theory.hpp"
#include "primedyn/ifs.hpp"
#include "primedyn/io.hpp"
#include "primedyn/null_models.hpp"
#include "primedyn/primes.hpp"
#include "primedyn/rng.hpp"
#include "primedyn/symbol_sequence.hpp"
#include "primedyn/symbolize.hpp"
