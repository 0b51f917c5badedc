/**************************************************************************
 * pgmsr.hpp
 *
 * Copyright 2026 The pgmsr Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

#pragma once

#include "pgmsr/balanced.hpp"
#include "pgmsr/bandwidth.hpp"
#include "pgmsr/base_msr.hpp"
#include "pgmsr/bibd.hpp"
#include "pgmsr/cluster.hpp"
#include "pgmsr/gf.hpp"
#include "pgmsr/injection.hpp"
#include "pgmsr/matrix.hpp"
#include "pgmsr/piggyback.hpp"
