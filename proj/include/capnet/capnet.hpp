// Copyright 2026 The capnet Authors.
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

// Umbrella header.

#ifndef CAPNET_CAPNET_HPP_
#define CAPNET_CAPNET_HPP_

#include "capnet/capsndp.hpp"
#include "capnet/embedding.hpp"
#include "capnet/errors.hpp"
#include "capnet/exact.hpp"
#include "capnet/generators.hpp"
#include "capnet/graph.hpp"
#include "capnet/io.hpp"
#include "capnet/rational.hpp"
#include "capnet/shaping.hpp"
#include "capnet/submodular.hpp"
#include "capnet/tree.hpp"
#include "capnet/up2p.hpp"

#endif  // CAPNET_CAPNET_HPP_
