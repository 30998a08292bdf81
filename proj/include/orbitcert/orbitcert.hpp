#pragma once

#include "field.hpp"
#include "matrix.hpp"
#include "linalg.hpp"
#include "module.hpp"
#include "hom.hpp"
#include "endalg.hpp"
#include "iso.hpp"
#include "report.hpp"
#include "degen.hpp"
#include "cusp.hpp"
#include "generators.hpp"
#include "oracles.hpp"
