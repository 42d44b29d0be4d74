#ifndef CRSU2_CRSU2_HPP
#define CRSU2_CRSU2_HPP

#include "crsu2/cartan.hpp"
#include "crsu2/core.hpp"
#include "crsu2/groups.hpp"
#include "crsu2/normalization.hpp"
#include "crsu2/random.hpp"
#include "crsu2/report.hpp"
#include "crsu2/tractor.hpp"
#include "crsu2/verification.hpp"

#endif  // CRSU2_CRSU2_HPP
