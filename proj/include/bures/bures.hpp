#ifndef BURES_BURES_HPP
#define BURES_BURES_HPP

#include "bures/errors.hpp"
#include "bures/matcore.hpp"
#include "bures/generator_basis.hpp"
#include "bures/states.hpp"
#include "bures/geodesy.hpp"
#include "bures/sun.hpp"
#include "bures/closedform.hpp"
#include "bures/random.hpp"

#endif  // BURES_BURES_HPP
