#pragma once

#include "afano/rational.hpp"
#include "afano/exact_core.hpp"
#include "afano/config.hpp"
#include "afano/ledger.hpp"
#include "afano/invariants.hpp"
#include "afano/enumerators.hpp"
#include "afano/catalog.hpp"
#include "afano/cli.hpp"
