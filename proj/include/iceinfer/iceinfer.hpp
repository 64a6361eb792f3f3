#pragma once

#include "iceinfer/bootstrap.hpp"
#include "iceinfer/color.hpp"
#include "iceinfer/csv.hpp"
#include "iceinfer/data_model.hpp"
#include "iceinfer/error.hpp"
#include "iceinfer/frontier.hpp"
#include "iceinfer/pipeline.hpp"
#include "iceinfer/preference.hpp"
#include "iceinfer/report.hpp"
#include "iceinfer/rng.hpp"
#include "iceinfer/scale.hpp"
#include "iceinfer/svg.hpp"
#include "iceinfer/wedge.hpp"
