#pragma once

#include "jlf/eisenstein.hpp"
#include "jlf/error.hpp"
#include "jlf/exp_sums.hpp"
#include "jlf/expansion.hpp"
#include "jlf/io.hpp"
#include "jlf/lattice.hpp"
#include "jlf/number_theory.hpp"
#include "jlf/poincare.hpp"
#include "jlf/rational.hpp"
#include "jlf/weil.hpp"
