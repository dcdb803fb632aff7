// Umbrella header.

#ifndef DPATH_DPATH_HPP_
#define DPATH_DPATH_HPP_

#include "complex.hpp"
#include "error.hpp"
#include "mooreflow.hpp"
#include "paths.hpp"
#include "rat.hpp"
#include "reedy.hpp"
#include "reparam.hpp"
#include "spaces.hpp"
#include "text_format.hpp"

#endif  // DPATH_DPATH_HPP_
