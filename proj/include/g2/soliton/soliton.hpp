#pragma once

#include "g2/soliton/candidate.hpp"
#include "g2/soliton/checks.hpp"
#include "g2/soliton/reduced_ode.hpp"
#include "g2/soliton/residuals.hpp"
#include "g2/soliton/shoot.hpp"
#include "g2/soliton/special.hpp"
