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

// Coefficients of x0^k in the group inverse of the extremal series
// sum K M^|w| |w|! w, and how they compare with the majorant sequence.

#include <cstdio>

#include "fliess/fliess.hpp"

using namespace fliess;

int main() {
    const int kmax = 8;
    BkTable t = bk_table(kmax);
    std::printf("# %s\n", t.normalization.c_str());
    for (int k = 0; k <= kmax; ++k) {
        Rational worst(0);
        for (const Rational& K : unit_grid(10)) {
            Rational v = abs_value(t.b[static_cast<std::size_t>(k)].substitute("K", Polynomial(K)).constant_value());
            if (v > worst) worst = v;
        }
        std::printf("k=%d  max|b_k| on [0,1] grid = %s  bound %s\n", k, worst.str().c_str(),
                    bk_majorants()[static_cast<std::size_t>(k)].str().c_str());
    }
    BoundReport rep = verify_bk_majorant(t, kmax, unit_grid(10));
    std::printf("%s\n", rep.summary().c_str());
    return rep.pass ? 0 : 1;
}
