#pragma once

#include "residua/circle/operator.hpp"
#include "residua/circle/symbol.hpp"
#include "residua/circle/trig.hpp"
#include "residua/common.hpp"
#include "residua/cone/bdensity.hpp"
#include "residua/cone/heat.hpp"
#include "residua/cone/nonlocal.hpp"
#include "residua/numerics/fit.hpp"
#include "residua/numerics/laurent.hpp"
#include "residua/numerics/linalg.hpp"
#include "residua/numerics/special.hpp"
#include "residua/radul/cocycle.hpp"
#include "residua/zeta/cm.hpp"
#include "residua/zeta/model.hpp"
#include "residua/zeta/structure.hpp"
