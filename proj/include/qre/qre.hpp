// Copyright 2026 The qre Authors
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

#pragma once

#include "qre/core/ops.hpp"
#include "qre/core/register.hpp"
#include "qre/core/state.hpp"
#include "qre/eraser.hpp"
#include "qre/errors.hpp"
#include "qre/measures.hpp"
#include "qre/mzi.hpp"
#include "qre/tomography.hpp"
