// Copyright 2026 The wpcone Authors
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


#pragma once

#include "wpcone/automata.hpp"
#include "wpcone/error.hpp"
#include "wpcone/experiments.hpp"
#include "wpcone/graphs.hpp"
#include "wpcone/group_oracle.hpp"
#include "wpcone/group_spec.hpp"
#include "wpcone/numeric.hpp"
#include "wpcone/oracles.hpp"
#include "wpcone/parikh.hpp"
#include "wpcone/schreier.hpp"
#include "wpcone/words.hpp"
