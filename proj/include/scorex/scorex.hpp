#pragma once

#include "scorex/core.hpp"
#include "scorex/exchange.hpp"
#include "scorex/gains.hpp"
#include "scorex/harness.hpp"
#include "scorex/information.hpp"
#include "scorex/scoring.hpp"
