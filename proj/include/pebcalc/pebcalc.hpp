#pragma once

#include "pebcalc/error.hpp"
#include "pebcalc/field.hpp"
#include "pebcalc/monomial.hpp"
#include "pebcalc/polynomial.hpp"
#include "pebcalc/full_polynomial.hpp"
#include "pebcalc/span.hpp"
#include "pebcalc/graph.hpp"
#include "pebcalc/pebbling.hpp"
#include "pebcalc/formula.hpp"
#include "pebcalc/proofs.hpp"
#include "pebcalc/translate.hpp"
#include "pebcalc/normalize.hpp"
#include "pebcalc/decide.hpp"
#include "pebcalc/report.hpp"
#include "pebcalc/io.hpp"
