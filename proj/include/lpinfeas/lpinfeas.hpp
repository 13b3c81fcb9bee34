// Copyright 2026 The lpinfeas Authors
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

#include "lpinfeas/analysis.hpp"
#include "lpinfeas/certificates.hpp"
#include "lpinfeas/cli.hpp"
#include "lpinfeas/demo.hpp"
#include "lpinfeas/error.hpp"
#include "lpinfeas/identifiability.hpp"
#include "lpinfeas/io.hpp"
#include "lpinfeas/linalg.hpp"
#include "lpinfeas/model.hpp"
#include "lpinfeas/mps.hpp"
#include "lpinfeas/operator_lab.hpp"
#include "lpinfeas/oracle.hpp"
#include "lpinfeas/pdhg.hpp"
#include "lpinfeas/solver.hpp"
