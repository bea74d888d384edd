// Copyright 2026 The fliess-kit Authors
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

// Everything in one include.

#pragma once

#include "fliess/bounds.hpp"
#include "fliess/chen_fliess.hpp"
#include "fliess/error.hpp"
#include "fliess/evolution.hpp"
#include "fliess/groups.hpp"
#include "fliess/parallel.hpp"
#include "fliess/polynomial.hpp"
#include "fliess/products.hpp"
#include "fliess/realization.hpp"
#include "fliess/scalar.hpp"
#include "fliess/series.hpp"
#include "fliess/series_io.hpp"
#include "fliess/signal.hpp"
#include "fliess/suites.hpp"
#include "fliess/word.hpp"
