#pragma once

#include "gjq/error.hpp"
#include "gjq/params.hpp"
#include "gjq/phase.hpp"
#include "gjq/series.hpp"
#include "gjq/coeffs.hpp"
#include "gjq/evaluator.hpp"
#include "gjq/nodes.hpp"
#include "gjq/weights.hpp"
#include "gjq/oracle.hpp"
#include "gjq/compare.hpp"
#include "gjq/compensated.hpp"
#include "gjq/rule.hpp"
#include "gjq/io.hpp"
