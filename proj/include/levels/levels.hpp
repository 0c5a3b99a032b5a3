// Copyright 2026 The Levels Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "levels/error.hpp"
#include "levels/rational.hpp"
#include "levels/structure.hpp"
#include "levels/probability.hpp"
#include "levels/dsl.hpp"
#include "levels/random.hpp"
#include "levels/montecarlo.hpp"
#include "levels/assets.hpp"
