#pragma once

#include "prodnorm/chaos.hpp"
#include "prodnorm/dist.hpp"
#include "prodnorm/errors.hpp"
#include "prodnorm/params.hpp"
#include "prodnorm/rng.hpp"
#include "prodnorm/sampling.hpp"
#include "prodnorm/specfun.hpp"
#include "prodnorm/stein.hpp"
