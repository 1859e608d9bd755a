#pragma once

#include "ppg/arith.hpp"
#include "ppg/certificate.hpp"
#include "ppg/dsl.hpp"
#include "ppg/error.hpp"
#include "ppg/formula.hpp"
#include "ppg/group.hpp"
#include "ppg/height.hpp"
#include "ppg/homogeneity.hpp"
#include "ppg/hull.hpp"
#include "ppg/matrix.hpp"
#include "ppg/ordinal.hpp"
#include "ppg/purity.hpp"
#include "ppg/rule_map.hpp"
#include "ppg/subgroup.hpp"
#include "ppg/summand.hpp"
#include "ppg/type_triple.hpp"
