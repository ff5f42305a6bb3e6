#pragma once

#include "ctop/examples/da.hpp"
#include "ctop/examples/finite.hpp"
#include "ctop/examples/ha.hpp"
#include "ctop/examples/halting.hpp"
#include "ctop/examples/pn.hpp"
#include "ctop/examples/sa.hpp"
