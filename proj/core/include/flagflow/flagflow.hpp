#pragma once

#include "flagflow/analysis.hpp"
#include "flagflow/compactify.hpp"
#include "flagflow/errors.hpp"
#include "flagflow/flow.hpp"
#include "flagflow/models.hpp"
#include "flagflow/poly2.hpp"
#include "flagflow/rational.hpp"
#include "flagflow/report.hpp"
#include "flagflow/upoly.hpp"
#include "flagflow/vector_field.hpp"
