#pragma once

#include "errors.hpp"
#include "rat.hpp"
#include "point.hpp"
#include "dsignal.hpp"
#include "rsignal.hpp"
#include "analysis.hpp"
#include "report.hpp"
#include "bridge.hpp"
#include "perturb.hpp"
#include "oracle.hpp"
#include "flow.hpp"
#include "io.hpp"
