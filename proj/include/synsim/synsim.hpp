#ifndef SYNSIM_SYNSIM_HPP
#define SYNSIM_SYNSIM_HPP

#include "synsim/error.hpp"
#include "synsim/evaluation.hpp"
#include "synsim/lexicons.hpp"
#include "synsim/pipeline.hpp"
#include "synsim/similarity.hpp"
#include "synsim/text.hpp"
#include "synsim/unicode.hpp"
#include "synsim/weighting.hpp"

#endif  // SYNSIM_SYNSIM_HPP
