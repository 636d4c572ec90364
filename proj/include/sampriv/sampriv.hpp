// Copyright 2026 The sampriv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef SAMPRIV_SAMPRIV_HPP_
#define SAMPRIV_SAMPRIV_HPP_

#include "sampriv/amplify.hpp"
#include "sampriv/config.hpp"
#include "sampriv/counting.hpp"
#include "sampriv/csv.hpp"
#include "sampriv/dist.hpp"
#include "sampriv/divergence.hpp"
#include "sampriv/error.hpp"
#include "sampriv/figures.hpp"
#include "sampriv/numeric.hpp"
#include "sampriv/oracle.hpp"
#include "sampriv/sampling.hpp"
#include "sampriv/tradeoff.hpp"
#include "sampriv/verify.hpp"

#endif  // SAMPRIV_SAMPRIV_HPP_
