#ifndef UALP_UALP_HPP
#define UALP_UALP_HPP

#include "ualp/angular_ode.hpp"
#include "ualp/identities.hpp"
#include "ualp/polynomial.hpp"
#include "ualp/quadrature.hpp"
#include "ualp/report.hpp"
#include "ualp/special_functions.hpp"

#endif  // UALP_UALP_HPP
