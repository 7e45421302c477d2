// Copyright 2026 The staticq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "staticq/embedder.hpp"
#include "staticq/errors.hpp"
#include "staticq/games.hpp"
#include "staticq/interposer.hpp"
#include "staticq/rng.hpp"
#include "staticq/schedule.hpp"
#include "staticq/schedule_json.hpp"
#include "staticq/skprf.hpp"
#include "staticq/transcript.hpp"
#include "staticq/verify.hpp"
