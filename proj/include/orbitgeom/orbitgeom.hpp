#pragma once

#include "errors.hpp"
#include "numkernel.hpp"
#include "random.hpp"
#include "spaces.hpp"
#include "orbits.hpp"
#include "actions.hpp"
#include "fibration.hpp"
#include "catalog.hpp"
#include "verify.hpp"
#include "serialize.hpp"
