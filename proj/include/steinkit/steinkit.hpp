#pragma once

#include "steinkit/analysis.hpp"
#include "steinkit/closedform.hpp"
#include "steinkit/equation.hpp"
#include "steinkit/errors.hpp"
#include "steinkit/genstein.hpp"
#include "steinkit/iterative.hpp"
#include "steinkit/matrix.hpp"
#include "steinkit/realrep.hpp"
#include "steinkit/spectral.hpp"
