// SPDX-License-Identifier: Apache-2.0
//
// ucexpo - rate and exposure statistics of user-centric cell-free networks
// Copyright (C) 2026 The ucexpo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <stdexcept>

#include "ucexpo/analytic.hpp"

namespace ucexpo
{

GammaApprox gamma_mm(int n, int M)
{
    if (n < 1 || M < 1)
        throw std::domain_error("gamma_mm: cluster size and antenna count must be >= 1");
    if (n == 1 && M == 1)
        return {1.0, 1.0};
    const double nd = n, Md = M;
    return {nd * Md / (3.0 * nd - 1.0), (3.0 * nd - 1.0) / (nd * nd * Md)};
}

} // namespace ucexpo
