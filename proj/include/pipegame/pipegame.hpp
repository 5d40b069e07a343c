// Copyright 2026 The pipegame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PIPEGAME_PIPEGAME_HPP
#define PIPEGAME_PIPEGAME_HPP

#include "pipegame/coalition.hpp"
#include "pipegame/errors.hpp"
#include "pipegame/flow.hpp"
#include "pipegame/game.hpp"
#include "pipegame/matrix.hpp"
#include "pipegame/network.hpp"
#include "pipegame/partition.hpp"
#include "pipegame/recursive_core.hpp"
#include "pipegame/report.hpp"
#include "pipegame/scenario_io.hpp"
#include "pipegame/shapley.hpp"
#include "pipegame/simplex.hpp"

#define PIPEGAME_VERSION_MAJOR 0
#define PIPEGAME_VERSION_MINOR 1
#define PIPEGAME_VERSION_PATCH 0

#endif  // PIPEGAME_PIPEGAME_HPP
