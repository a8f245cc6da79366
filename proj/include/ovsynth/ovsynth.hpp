#pragma once

#include "ovsynth/dot.hpp"
#include "ovsynth/error.hpp"
#include "ovsynth/marking.hpp"
#include "ovsynth/matrix.hpp"
#include "ovsynth/overstates.hpp"
#include "ovsynth/partition.hpp"
#include "ovsynth/petri_net.hpp"
#include "ovsynth/pipeline.hpp"
#include "ovsynth/place_expr.hpp"
#include "ovsynth/pnet_format.hpp"
#include "ovsynth/reachability.hpp"
#include "ovsynth/synthesis.hpp"
