// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "hilbert_cone/contraction.hpp"
#include "hilbert_cone/core_metric.hpp"
#include "hilbert_cone/errors.hpp"
#include "hilbert_cone/format.hpp"
#include "hilbert_cone/io.hpp"
#include "hilbert_cone/markov.hpp"
#include "hilbert_cone/metric_bounds.hpp"
#include "hilbert_cone/rng.hpp"
#include "hilbert_cone/simplex_geometry.hpp"
#include "hilbert_cone/svg.hpp"
#include "hilbert_cone/types.hpp"
