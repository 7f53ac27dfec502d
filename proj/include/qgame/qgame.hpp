// Copyright 2026 The qgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QGAME_QGAME_HPP_
#define QGAME_QGAME_HPP_

#include "qgame/equilibrium.hpp"
#include "qgame/errors.hpp"
#include "qgame/game.hpp"
#include "qgame/io.hpp"
#include "qgame/linalg.hpp"
#include "qgame/strategy.hpp"
#include "qgame/sweep.hpp"

#endif  // QGAME_QGAME_HPP_
