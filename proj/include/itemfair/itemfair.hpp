// Copyright 2026 The itemfair Authors
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

#include "itemfair/analysis.hpp"
#include "itemfair/bounds.hpp"
#include "itemfair/core.hpp"
#include "itemfair/error.hpp"
#include "itemfair/evaluation.hpp"
#include "itemfair/examination.hpp"
#include "itemfair/experiments.hpp"
#include "itemfair/exposure.hpp"
#include "itemfair/fairness.hpp"
#include "itemfair/io.hpp"
#include "itemfair/oracle.hpp"
#include "itemfair/relevance.hpp"
#include "itemfair/report.hpp"
