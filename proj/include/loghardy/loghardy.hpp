#pragma once

#include "errors.hpp"
#include "iterfun.hpp"
#include "dual.hpp"
#include "quadrature.hpp"
#include "potentials.hpp"
#include "bounds.hpp"
#include "spectra.hpp"
#include "forms.hpp"
#include "harness.hpp"
#include "suites.hpp"
#include "config.hpp"
#include "report.hpp"
