#pragma once

#include "radlyap/errors.hpp"
#include "radlyap/families.hpp"
#include "radlyap/gamma.hpp"
#include "radlyap/ode.hpp"
#include "radlyap/planar.hpp"
#include "radlyap/potential.hpp"
#include "radlyap/radial_spectra.hpp"
#include "radlyap/report.hpp"
#include "radlyap/sobolev.hpp"
#include "radlyap/sphere.hpp"
#include "radlyap/zero_structure.hpp"
