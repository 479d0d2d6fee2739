#pragma once

#include "pfprime/bench.hpp"
#include "pfprime/census.hpp"
#include "pfprime/counters.hpp"
#include "pfprime/cyclotomic.hpp"
#include "pfprime/modpoly.hpp"
#include "pfprime/natural.hpp"
#include "pfprime/periodsys.hpp"
#include "pfprime/pipeline.hpp"
#include "pfprime/primality.hpp"
#include "pfprime/pseudofield.hpp"
#include "pfprime/ring_arith.hpp"
#include "pfprime/rng.hpp"
#include "pfprime/serialize.hpp"
