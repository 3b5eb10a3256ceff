#ifndef DYNLOC_DYNLOC_HPP
#define DYNLOC_DYNLOC_HPP

#include "dynloc/analysis.hpp"
#include "dynloc/classical.hpp"
#include "dynloc/config.hpp"
#include "dynloc/elliptic.hpp"
#include "dynloc/experiments.hpp"
#include "dynloc/forcing.hpp"
#include "dynloc/husimi.hpp"
#include "dynloc/io.hpp"
#include "dynloc/parallel.hpp"
#include "dynloc/quadrature.hpp"
#include "dynloc/quantum.hpp"
#include "dynloc/rng.hpp"
#include "dynloc/version.hpp"

#endif
