#pragma once

#include "circle.hpp"
#include "errors.hpp"
#include "json_io.hpp"
#include "lamination.hpp"
#include "mating.hpp"
#include "qml.hpp"
#include "svg.hpp"
#include "symdyn.hpp"
