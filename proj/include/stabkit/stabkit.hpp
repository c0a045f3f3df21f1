// Copyright 2026 The stabkit Authors
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

#ifndef STABKIT_STABKIT_HPP_
#define STABKIT_STABKIT_HPP_

#include "stabkit/additive.hpp"
#include "stabkit/errors.hpp"
#include "stabkit/experiment.hpp"
#include "stabkit/fwht.hpp"
#include "stabkit/gf2.hpp"
#include "stabkit/graphs.hpp"
#include "stabkit/io.hpp"
#include "stabkit/oracle.hpp"
#include "stabkit/random.hpp"
#include "stabkit/sampling.hpp"
#include "stabkit/state.hpp"
#include "stabkit/theta.hpp"
#include "stabkit/uncertainty.hpp"

#endif  // STABKIT_STABKIT_HPP_
