/*
   Copyright 2026 The crrlib authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef CRR_CRR_HPP
#define CRR_CRR_HPP

#include "crr/chain_seq.hpp"
#include "crr/coulomb.hpp"
#include "crr/gamma.hpp"
#include "crr/opuc.hpp"
#include "crr/poly_core.hpp"
#include "crr/quadrature.hpp"
#include "crr/types.hpp"
#include "crr/zeros.hpp"

#endif  // CRR_CRR_HPP
