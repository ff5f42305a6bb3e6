#pragma once

#include "ctop/ceers.hpp"
#include "ctop/examples.hpp"
#include "ctop/ideals.hpp"
#include "ctop/io.hpp"
#include "ctop/kernel.hpp"
#include "ctop/oracles.hpp"
#include "ctop/spaces.hpp"
#include "ctop/stage_log.hpp"
