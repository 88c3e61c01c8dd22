#pragma once

#include "wcore/scalar.hpp"
#include "wcore/matrix.hpp"
#include "wcore/random.hpp"
#include "wcore/ginverse.hpp"
#include "wcore/enumeration.hpp"
#include "wcore/characterize.hpp"
#include "wcore/oracle.hpp"
